// cantor: decide sentences over (R, <, +, C[r,K], ...), compare formulas,
// extract witnesses, inspect Cantor sets, run the W-from-C stages.
//
// Exit status: 0 true/success, 1 false/empty, 2 error.

#include "cantor/automata/automaton.hpp"
#include "cantor/cset/cantor_set.hpp"
#include "cantor/exact/expansion.hpp"
#include "cantor/exact/number_theory.hpp"
#include "cantor/logic/compiler.hpp"
#include "cantor/logic/parser.hpp"
#include "cantor/logic/theorem_a.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cantor;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string source(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

logic::FormulaPtr formula(const std::string& arg) { return logic::parse(source(arg)); }

Rational rational(const std::string& s) {
    try {
        return Rational::parse(s);
    } catch (const std::exception&) {
        throw std::domain_error("not a rational: " + s);
    }
}

exact::PowerOfBase power(int r, const std::string& s) {
    auto n = exact::log_of_power(rational(s), r);
    if (!n) throw std::domain_error(s + " is not a power of " + std::to_string(r));
    return {r, *n};
}

// "1,3", "{1,3}" or "1 3"
std::set<int> digit_set(const std::string& s) {
    std::set<int> K;
    std::string cur;
    for (char ch : s + ",") {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            cur += ch;
        } else if (!cur.empty()) {
            K.insert(std::stoi(cur));
            cur.clear();
        }
    }
    return K;
}

int run(int argc, char** argv) {
    CLI::App app{"Decision procedure for the reals with + and a generalized Cantor set"};
    app.require_subcommand(1);
    std::size_t cap = 0;
    double timeout = 0;
    app.add_option("--cap-states", cap, "state cap per construction")->check(CLI::PositiveNumber);
    app.add_option("--timeout", timeout, "wall-clock limit in seconds")->check(CLI::PositiveNumber);

    int status = 0;
    std::vector<std::pair<CLI::App*, std::function<void()>>> actions;
    auto on = [&](CLI::App* sub, std::function<void()> f) { actions.emplace_back(sub, std::move(f)); };
    auto verdict = [&](bool v) {
        std::cout << (v ? "true" : "false") << "\n";
        status = v ? 0 : 1;
    };

    std::string f1, f2;
    auto* decide = app.add_subcommand("decide", "decide a sentence (file or inline)");
    decide->add_option("formula", f1)->required();
    on(decide, [&] { verdict(logic::Compiler().decide(formula(f1))); });

    auto* equiv = app.add_subcommand("equiv", "same relation over the union of free variables");
    equiv->add_option("f", f1)->required();
    equiv->add_option("g", f2)->required();
    on(equiv, [&] { verdict(logic::Compiler().equivalent(formula(f1), formula(f2))); });

    auto* witness = app.add_subcommand("witness", "a satisfying assignment");
    witness->add_option("formula", f1)->required();
    on(witness, [&] {
        auto w = logic::Compiler().witness(formula(f1));
        if (!w) {
            std::cout << "empty\n";
            status = 1;
            return;
        }
        for (const auto& [v, q] : *w) std::cout << v << " = " << q.str() << "\n";
    });

    auto* cantor = app.add_subcommand("cantor", "generalized Cantor set utilities");
    cantor->require_subcommand(1);
    std::string set_text, s_text, c_text;
    int depth = 1, upto = 6;
    bool exact_depth = false;
    auto* endpoints = cantor->add_subcommand("endpoints", "complementary intervals up to a depth");
    endpoints->add_option("set", set_text)->required();
    endpoints->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    endpoints->add_flag("--exact", exact_depth, "only intervals of exactly this depth");
    on(endpoints, [&] {
        auto P = cset::CantorParams::parse(set_text);
        std::vector<cset::CompInterval> out;
        for (const auto& d : cset::right_endpoints(
                 P, depth, exact_depth ? cset::EndpointMode::exact_depth : cset::EndpointMode::cumulative))
            out.push_back(cset::interval_at(P, d));
        std::cout << cset::format_intervals(out);
    });

    auto* mu = cantor->add_subcommand("mu", "largest right endpoint <= c of an interval of length >= s");
    mu->add_option("set", set_text)->required();
    mu->add_option("s", s_text)->required();
    mu->add_option("c", c_text)->required();
    on(mu, [&] {
        auto P = cset::CantorParams::parse(set_text);
        auto s = power(P.base(), s_text);
        auto c = rational(c_text);
        if (s.exponent > 0) throw std::domain_error("s must be at most 1");
        if (!cset::contains(P, c)) throw std::domain_error(c.str() + " is not in " + P.str());
        const int n = static_cast<int>(-s.exponent);
        auto a = cset::mu_by_definition(P, n, c), b = cset::mu_closed_form(P, n, c);
        std::cout << "mu " << a.str() << "\nclosed_form " << b.str() << "\nagree " << (a == b ? "true" : "false")
                  << "\n";
    });

    auto* digits = cantor->add_subcommand("digits", "canonical digits and their recovery from interval data");
    digits->add_option("set", set_text)->required();
    digits->add_option("c", c_text)->required();
    digits->add_option("--upto", upto)->check(CLI::PositiveNumber);
    on(digits, [&] {
        auto P = cset::CantorParams::parse(set_text);
        auto c = rational(c_text);
        if (!cset::contains(P, c)) throw std::domain_error(c.str() + " is not in " + P.str());
        auto e = exact::expand(c, P.base());
        std::cout << "# position canonical via_Z\n";
        for (int n = 1; n <= upto; ++n) {
            auto z = cset::digit_via_Z(P, c, {P.base(), -n});
            std::cout << n << " " << e.digit_at(-n) << " " << (z ? std::to_string(*z) : "-") << "\n";
        }
    });

    auto* drn = app.add_subcommand("drn", "rationals with denominator dividing a power of r");
    drn->require_subcommand(1);
    int r = 2;
    std::size_t count = 10;
    auto* enumerate = drn->add_subcommand("enum", "the first elements of the enumeration");
    enumerate->add_option("r", r)->required()->check(CLI::Range(2, 1 << 20));
    enumerate->add_option("--count", count);
    on(enumerate, [&] {
        for (const auto& q : exact::enumerate_Dr(r, count)) std::cout << q.str() << "\n";
    });

    std::string out_path;
    bool dot = false;
    auto* compile = app.add_subcommand("compile", "write the automaton of a formula");
    compile->add_option("formula", f1)->required();
    compile->add_option("--out", out_path)->required();
    compile->add_flag("--dot", dot, "Graphviz instead of the text format");
    on(compile, [&] {
        auto c = logic::Compiler().compile(formula(f1));
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << (dot ? automata::to_dot(c.automaton) : automata::to_text(c.automaton));
        std::cout << "tracks";
        for (const auto& v : c.vars) std::cout << " " << v;
        std::cout << "\nbase " << c.automaton.base() << "\nstates " << c.automaton.size() << "\n";
    });

    std::string K_text;
    auto* theorem = app.add_subcommand("check-theorem-a", "define W_r from C[r,K] stage by stage");
    theorem->add_option("r", r)->required();
    theorem->add_option("K", K_text)->required();
    on(theorem, [&] {
        cset::CantorParams P(r, digit_set(K_text));
        bool all = true;
        for (auto st : logic::all_stages()) {
            auto rep = logic::run_stage(st, P);
            std::cout << logic::stage_name(st) << " " << (rep.passed ? "PASS" : "FAIL") << " "
                      << std::to_string(rep.seconds).substr(0, 5) << "s " << rep.detail << std::endl;
            all = all && rep.passed;
        }
        status = all ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (cap) automata::set_state_cap(cap);
    if (timeout > 0) automata::set_deadline_seconds(timeout);
    for (auto& [sub, f] : actions)
        if (sub->parsed()) f();
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
