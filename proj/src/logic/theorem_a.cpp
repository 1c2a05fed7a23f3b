#include "cantor/logic/theorem_a.hpp"

#include "cantor/automata/atoms.hpp"
#include "cantor/exact/number_theory.hpp"
#include "cantor/logic/parser.hpp"

#include <chrono>
#include <new>
#include <sstream>

namespace cantor::logic {

using automata::Automaton;
using automata::Letter;
using automata::State;

std::string stage_name(Stage s) {
    switch (s) {
        case Stage::RPowFromC: return "rpow_from_C";
        case Stage::MuGraph: return "mu_graph";
        case Stage::ZEqualsUOnC: return "Z_equals_U_on_C";
        case Stage::WFromC: return "W_from_C";
    }
    return "?";
}

const std::vector<Stage>& all_stages() {
    static const std::vector<Stage> v{Stage::RPowFromC, Stage::MuGraph, Stage::ZEqualsUOnC, Stage::WFromC};
    return v;
}

std::optional<Stage> parse_stage(const std::string& name) {
    for (Stage s : all_stages())
        if (stage_name(s) == name) return s;
    return std::nullopt;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string cantor_atom(const cset::CantorParams& P) {
    std::vector<std::string> ks;
    for (int k : P.excluded()) ks.push_back(std::to_string(k));
    return "C[" + std::to_string(P.base()) + ",{" + join(ks, ",") + "}]";
}

}  // namespace

std::string cantor_macros(const cset::CantorParams& P) {
    const int r = P.base();
    const std::string R = std::to_string(r), top = std::to_string(r - 1);
    const auto& runs = P.runs();
    std::ostringstream o;

    o << "let Cs(x) := " << cantor_atom(P) << "(x);\n";
    o << "let Gap(y, x) := Cs(y) & Cs(x) & y < x & !(E z. (Cs(z) & y < z & z < x));\n";
    o << "let Len(d, l) := 0 < l & Gap(d - l, d);\n";
    // right endpoints whose gap is at least as long as every gap to their left
    o << "let Rec(d) := E l. (Len(d, l) & !(E e. E f. (Len(e, f) & e < d & 0 < l & l <= f)));\n";

    std::vector<std::string> recs;
    for (int i : P.record_runs()) {
        const auto& run = runs[static_cast<std::size_t>(i - 1)];
        const std::string m = std::to_string(run.m), w = std::to_string(run.length());
        recs.push_back("Rec(" + m + " * x) & Len(" + m + " * x, " + w + " * x)");
    }
    o << "let RPow(x) := x = 1 | (" << join(recs, " & ") << ");\n";
    o << "let PPow(x) := RPow(x) & x < 1;\n";

    // right endpoints of gaps of length >= a
    o << "let R(a, x) := E l. (Len(x, l) & 0 < a & a <= l);\n";
    o << "let Mu(s, c, y) := RPow(s) & Cs(c) & ((R(s, y) & y <= c & !(E e. (R(s, e) & y < e & e <= c)))"
         " | (y = 0 & !(E e. (R(s, e) & e <= c))));\n";

    std::vector<std::string> cells;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const std::string lo = std::to_string(i * r), hi = std::to_string((i + 1) * r);
            const std::string clo = std::to_string(i * r + j), chi = std::to_string(i * r + j + 1);
            cells.push_back("(d = " + std::to_string(j) + " & m + " + lo + " * s <= n & n < m + " + hi +
                            " * s & m + " + clo + " * s <= c & c < m + " + chi + " * s)");
        }
    o << "let Z(c, s, d) := Cs(c) & PPow(s) & (E m. E n. (Mu(" << R << " * s, c, m) & Mu(s, c, n) & ("
      << join(cells, " | ") << ")));\n";

    // Level-n grid points of C (the K-avoiding words of length n, s = r^-n):
    // each lies fewer than r steps of s past 0 or a right endpoint of a gap of
    // length >= s, and is followed by points of C within s.
    std::vector<std::string> steps;
    for (int j = 0; j < r; ++j) steps.push_back("y = d + " + std::to_string(j) + " * s");
    o << "let LGrid(s, y) := RPow(s) & 0 <= y & y < 1 & (E z. (Cs(z) & y < z & z < y + s))"
         " & (E d. (((d = 0 & 0 < s) | R(s, d)) & ("
      << join(steps, " | ") << ")));\n";
    o << "let Trunc(s, c, y) := LGrid(s, y) & y <= c & !(E w. (LGrid(s, w) & y < w & w <= c));\n";
    std::vector<std::string> digs;
    for (int j = 0; j < r; ++j)
        digs.push_back("(d = " + std::to_string(j) + " & w = y + " + std::to_string(j) + " * s)");
    o << "let DigitTr(c, s, d) := E y. E w. (Trunc(" << R << " * s, c, y) & Trunc(s, c, w) & ("
      << join(digs, " | ") << "));\n";
    o << "let LeftDeep(c, s) := E e. (Gap(c, e) & 0 < s & s <= e - c);\n";

    // Canonical digit on C x r^-N. Truncation reads the largest K-avoiding
    // expansion, which is not the canonical one at left endpoints of gaps
    // (from the gap's depth on) and at c = 1; those read the digit off the
    // gap's right endpoint. The guard sits inside the quantifier so the
    // projected relation stays finite per level.
    std::vector<std::string> fix;
    for (const auto& run : runs)
        fix.push_back("(DigitTr(e, s, " + std::to_string(run.m) + ") & d = " + std::to_string(run.k) + ")");
    o << "let UC(c, s, d) := Cs(c) & RPow(s) & ((s = 1 & ((c < 1 & d = 0) | (c = 1 & d = 1)))"
         " | (s < 1 & c = 1 & d = 0)"
         " | (s < 1 & c < 1 & !LeftDeep(c, s) & DigitTr(c, s, d))"
         " | (E e. (PPow(s) & Gap(c, e) & s <= e - c & ((e - c < "
      << R << " * s & (" << join(fix, " | ") << ")) | (" << R << " * s <= e - c & d = 0)))));\n";

    // some expansion: canonical, or the dual of a terminating c
    o << "let VC(c, u, k) := E v. (UC(c, u, k) | (RPow(v) & RPow(u) & u <= v & !UC(c, v, 0)"
         " & (A t. ((RPow(t) & t < v) -> UC(c, t, 0)))"
         " & (u = v -> UC(c, u, k + 1)) & (u < v -> k = "
      << top << ")));\n";

    o << "let E1(c) := Cs(c) & (A u. (PPow(u) -> (VC(c, u, 0) | VC(c, u, " << top << "))));\n";
    // digit r-1 in the {0, r-1} expansion of c in E1: canonical unless the
    // canonical expansion ends in a 1
    o << "let T(c, u) := E v. (E1(c) & PPow(u) & (UC(c, u, " << top << ") | (RPow(v) & UC(c, v, 1) & u < v)));\n";

    const int n = r - 1;
    std::vector<std::string> cs, sum, es, counts;
    for (int i = 1; i <= n; ++i) {
        cs.push_back("c" + std::to_string(i));
        es.push_back("E1(c" + std::to_string(i) + ")");
    }
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<std::string> lits;
        int bits = 0;
        for (int i = 0; i < n; ++i) {
            const bool in = (mask >> i) & 1;
            bits += in;
            lits.push_back(std::string(in ? "" : "!") + "T(" + cs[static_cast<std::size_t>(i)] + ", u)");
        }
        counts.push_back("(k = " + std::to_string(bits) + " & " + join(lits, " & ") + ")");
    }
    std::string quants;
    for (const auto& c : cs) quants += "E " + c + ". ";
    o << "let L21(x, u, k) := " << quants << "(" << join(es, " & ") << " & " << n << " * x = " << join(cs, " + ")
      << " & (" << join(counts, " | ") << "));\n";

    o << "let WC(x, u, k) := 0 <= x & x <= 1 & RPow(u) & ((u < 1 & x < 1 & L21(x, u, k))"
         " | (u = 1 & x < 1 & k = 0) | (x = 1 & u = 1 & (k = 0 | k = 1))"
         " | (x = 1 & u < 1 & (k = 0 | k = "
      << top << ")));\n";
    return o.str();
}

namespace {

struct StageSides {
    std::vector<std::string> vars;
    std::string formula;
};

StageSides sides(Stage s) {
    switch (s) {
        case Stage::RPowFromC: return {{"x"}, "RPow(x)"};
        case Stage::MuGraph: return {{"s", "c", "y"}, "Mu(s, c, y)"};
        case Stage::ZEqualsUOnC: return {{"c", "s", "d"}, "Z(c, s, d)"};
        case Stage::WFromC: return {{"x", "u", "k"}, "WC(x, u, k)"};
    }
    return {};
}

}  // namespace

std::string stage_program(Stage s, const cset::CantorParams& P) {
    return cantor_macros(P) + sides(s).formula + "\n";
}

Automaton mu_direct(const cset::CantorParams& P) {
    const int r = P.base();
    // word-level automaton: s = r^-n, c a K-avoiding word in [0,1], y the
    // value from some choice of level p <= n (or 0); the maximum is taken below
    enum : State { START, INT, COPY, AFTER, ZERO, DONE, ONE };
    automata::WeakNba nba;
    nba.base = r;
    nba.arity = 3;
    nba.initial = {START};
    nba.accepting = [](State q) { return q == DONE || q == ONE; };
    const Letter star = automata::letter_count(r, 3) - 1;
    auto L = [r](int s, int c, int y) { return automata::pack_letter(r, {s, c, y}); };
    nba.edges = [=](State q, std::vector<std::pair<Letter, State>>& out) {
        switch (q) {
            case START: out.push_back({L(0, 0, 0), INT}); break;
            case INT:
                out.push_back({L(0, 0, 0), INT});
                out.push_back({star, COPY});
                out.push_back({star, ZERO});
                out.push_back({star, ONE});
                break;
            case COPY:
                for (int b = 0; b < r; ++b) {
                    if (!P.allowed(b)) continue;
                    out.push_back({L(0, b, b), COPY});
                    if (auto f = P.floor_in_M(b)) {
                        out.push_back({L(0, b, *f), AFTER});
                        out.push_back({L(1, b, *f), DONE});
                    }
                }
                break;
            case AFTER:
            case ZERO:
                for (int b = 0; b < r; ++b) {
                    if (!P.allowed(b)) continue;
                    out.push_back({L(0, b, 0), q});
                    out.push_back({L(1, b, 0), DONE});
                }
                break;
            case DONE:
                for (int b = 0; b < r; ++b)
                    if (P.allowed(b)) out.push_back({L(0, b, 0), DONE});
                break;
            case ONE:
                for (int b = 0; b < r; ++b)
                    if (P.allowed(b)) out.push_back({L(r - 1, b, 0), ONE});
                break;
        }
    };
    const Automaton G = automata::saturate_all(automata::determinize(nba, "mu candidates"));
    const Automaton G4 = automata::cylindrify(G, 4, {0, 1, 3});
    const Automaton lt = automata::cylindrify(automata::atom_less(r), 4, {2, 3});
    const Automaton beaten = automata::project(automata::product(G4, lt, automata::BoolOp::And), 3);
    return automata::minimize(automata::product(G, beaten, automata::BoolOp::Minus));
}

namespace {

std::string describe_difference(const Automaton& formula_side, const Automaton& direct_side,
                                const std::vector<std::string>& vars) {
    const auto diff = automata::product(formula_side, direct_side, automata::BoolOp::Xor);
    const auto w = automata::find_witness(diff);
    if (!w) return "";
    const auto v = automata::decode(diff.base(), diff.arity(), *w);
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += " ";
        out += vars[i] + "=" + v[i].str();
    }
    out += automata::accepts_encoding(formula_side, *w) ? " (formula side only)" : " (direct side only)";
    return out;
}

}  // namespace

StageReport run_stage(Stage s, const cset::CantorParams& P, Compiler& compiler) {
    StageReport rep;
    rep.stage = s;
    const auto t0 = std::chrono::steady_clock::now();
    const auto sd = sides(s);
    try {
        const Automaton lhs = compiler.compile_as(parse(stage_program(s, P)), sd.vars);
        Automaton rhs(P.base(), static_cast<int>(sd.vars.size()));
        switch (s) {
            case Stage::RPowFromC: rhs = automata::atom_inv_pow(P.base()); break;
            case Stage::MuGraph: rhs = mu_direct(P); break;
            case Stage::ZEqualsUOnC: {
                const std::string r = std::to_string(P.base());
                rhs = compiler.compile_as(parse("Ur[" + r + "](c, s, d) & " + cantor_atom(P) + "(c) & InvPow[" + r +
                                                "](s) & s < 1"),
                                          sd.vars);
                break;
            }
            case Stage::WFromC: rhs = automata::atom_W(P.base()); break;
        }
        if (lhs.base() != rhs.base()) {
            int a = 0;
            for (long p = 1; p < rhs.base(); p *= lhs.base()) ++a;
            rhs = automata::expand_base(rhs, lhs.base(), a);
        }
        rep.passed = automata::equivalent(lhs, rhs);
        rep.detail = rep.passed ? "equivalent" : "counterexample " + describe_difference(lhs, rhs, sd.vars);
    } catch (const automata::ResourceError& e) {
        rep.detail = "resource limit in stage " + stage_name(s) + ": " + e.what();
    } catch (const std::bad_alloc&) {
        rep.detail = "resource limit in stage " + stage_name(s) + ": out of memory";
    } catch (const automata::NonWeakError& e) {
        rep.detail = "non-weak relation in stage " + stage_name(s) + ": " + e.what();
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

int stage_base(const cset::CantorParams& P) {
    return static_cast<int>(exact::primitive_root(P.base()).first);
}

StageReport run_stage(Stage s, const cset::CantorParams& P) {
    Compiler compiler(stage_base(P));
    return run_stage(s, P, compiler);
}

}  // namespace cantor::logic
