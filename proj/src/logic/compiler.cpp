#include "cantor/logic/compiler.hpp"

#include "cantor/automata/atoms.hpp"
#include "cantor/cset/cantor_set.hpp"
#include "cantor/exact/expansion.hpp"
#include "cantor/exact/number_theory.hpp"

#include <algorithm>
#include <numeric>

namespace cantor::logic {

using automata::Automaton;
using automata::BoolOp;

int working_base(const std::set<int>& bases) {
    if (bases.empty()) return 2;
    long t = 0, g = 0;
    int first = 0;
    for (int r : bases) {
        auto [root, e] = exact::primitive_root(r);
        if (t == 0) {
            t = root;
            first = r;
        } else if (root != t) {
            throw BaseError("bases " + std::to_string(first) + " and " + std::to_string(r) +
                            " are multiplicatively independent; a structure with both defines every compact set, "
                            "so its theory is undecidable");
        }
        g = std::gcd(g, e);
    }
    long b = 1;
    for (long i = 0; i < g; ++i) b *= t;
    return static_cast<int>(b);
}

namespace {

// Alpha-normalized printing: free variables by first occurrence, bound ones by depth.
std::string canon_term(const TermPtr& t, const std::map<std::string, std::string>& names) {
    switch (t->kind) {
        case Term::Kind::Var: {
            auto it = names.find(t->name);
            return it == names.end() ? "?" + t->name : it->second;
        }
        case Term::Kind::Const: return t->value.str();
        case Term::Kind::Add: return "(" + canon_term(t->a, names) + "+" + canon_term(t->b, names) + ")";
        case Term::Kind::Scale: return "(" + t->value.str() + "*" + canon_term(t->a, names) + ")";
    }
    return "";
}

std::string canon(const FormulaPtr& f, std::map<std::string, std::string>& names, int depth) {
    using K = Formula::Kind;
    std::string s = std::to_string(static_cast<int>(f->kind));
    if (f->kind == K::Atom) {
        s += pred_name(f->pred) + std::to_string(f->base);
        for (int k : f->K) s += "," + std::to_string(k);
    }
    s += "[";
    for (const auto& t : f->terms) s += canon_term(t, names) + ";";
    if (f->kind == K::Exists || f->kind == K::Forall) {
        auto old = names.find(f->var);
        std::optional<std::string> saved;
        if (old != names.end()) saved = old->second;
        names[f->var] = "#" + std::to_string(depth);
        s += canon(f->kids[0], names, depth + 1);
        if (saved) names[f->var] = *saved;
        else names.erase(f->var);
    } else {
        for (const auto& k : f->kids) s += canon(k, names, depth) + "|";
    }
    return s + "]";
}

std::string cache_key(const FormulaPtr& f, int base) {
    std::map<std::string, std::string> names;
    auto fv = free_vars(f);
    for (std::size_t i = 0; i < fv.size(); ++i) names[fv[i]] = "%" + std::to_string(i);
    return std::to_string(base) + ":" + canon(f, names, 0);
}

// Tracks of `from` placed into `to` (every name of `from` must occur in `to`).
Automaton align(const Automaton& A, const std::vector<std::string>& from, const std::vector<std::string>& to) {
    if (from == to) return A;
    std::vector<int> where;
    for (const auto& v : from) {
        auto it = std::find(to.begin(), to.end(), v);
        if (it == to.end()) throw std::logic_error("align: variable " + v + " missing");
        where.push_back(static_cast<int>(it - to.begin()));
    }
    return automata::cylindrify(A, static_cast<int>(to.size()), where);
}

}  // namespace

int Compiler::base_for(const FormulaPtr& f) const {
    std::set<int> bases = bases_of(f);
    if (!forced_) return working_base(bases);
    bases.insert(*forced_);
    working_base(bases);  // independence check
    for (int r : bases) {
        long p = 1;
        while (p < r) p *= *forced_;
        if (p != r) throw BaseError("base " + std::to_string(r) + " is not a power of the working base " +
                                    std::to_string(*forced_));
    }
    return *forced_;
}

Automaton Compiler::atom_automaton(const Formula& f, int base) {
    const int r = f.pred == Pred::Int ? base : f.base;
    std::string key = pred_name(f.pred) + "/" + std::to_string(r);
    for (int k : f.K) key += "," + std::to_string(k);
    std::string full = key + "@" + std::to_string(base);
    if (auto it = atoms_.find(full); it != atoms_.end()) return it->second;
    auto native = [&]() -> Automaton {
        if (auto it = atoms_.find(key + "@" + std::to_string(r)); it != atoms_.end()) return it->second;
        switch (f.pred) {
            case Pred::Cantor: return automata::atom_cantor(cset::CantorParams(r, f.K));
            case Pred::V: return automata::atom_V(r);
            case Pred::U: return automata::atom_U(r);
            case Pred::W: return automata::atom_W(r);
            case Pred::Int: return automata::atom_int(r);
            case Pred::InvPow: return automata::atom_inv_pow(r);
            case Pred::Pow: return automata::atom_pow(r);
            case Pred::Dfin: return automata::atom_dfin(r);
        }
        throw std::logic_error("unknown predicate");
    }();
    atoms_.emplace(key + "@" + std::to_string(r), native);
    Automaton A = native;
    if (r != base) {
        int a = 0;
        long p = 1;
        while (p < r) {
            p *= base;
            ++a;
        }
        A = automata::expand_base(native, base, a);
    }
    atoms_.emplace(full, A);
    return A;
}

Automaton Compiler::build(const FormulaPtr& f, int base, const std::vector<std::string>& vars) {
    using K = Formula::Kind;
    automata::check_deadline();
    const std::string key = cache_key(f, base);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Automaton out(base, static_cast<int>(vars.size()));
    auto sub = [&](const FormulaPtr& g) {
        auto gv = free_vars(g);
        return align(build(g, base, gv), gv, vars);
    };
    switch (f->kind) {
        case K::True: out = automata::valid_words(base, 0); break;
        case K::False: out = automata::empty_automaton(base, 0); break;
        case K::Less:
        case K::Leq:
        case K::Eq: {
            LinearForm lf = linearize(Term::add(f->terms[0], Term::scale(Rational(-1), f->terms[1])));
            std::vector<Rational> a;
            for (const auto& v : vars) a.push_back(lf.coeff(v));
            Rational rhs = -lf.constant;
            if (f->kind == K::Eq) {
                out = automata::linear(base, a, automata::Rel::Eq, rhs);
            } else {
                out = automata::linear(base, a, automata::Rel::Less, rhs);
                if (f->kind == K::Leq)
                    out = automata::product(out, automata::linear(base, a, automata::Rel::Eq, rhs), BoolOp::Or);
            }
            break;
        }
        case K::Atom: {
            Automaton P = atom_automaton(*f, base);
            const int n = static_cast<int>(vars.size());
            const int m = static_cast<int>(f->terms.size());
            std::vector<std::string> direct;
            bool plain = true;
            for (const auto& t : f->terms) {
                if (t->kind != Term::Kind::Var ||
                    std::find(direct.begin(), direct.end(), t->name) != direct.end()) {
                    plain = false;
                    break;
                }
                direct.push_back(t->name);
            }
            if (plain) {
                out = align(P, direct, vars);
                break;
            }
            // tracks: vars, then one fresh track per argument tied to it by an equation
            std::vector<int> where(static_cast<std::size_t>(m));
            std::iota(where.begin(), where.end(), n);
            Automaton A = automata::cylindrify(P, n + m, where);
            for (int i = 0; i < m; ++i) {
                LinearForm lf = linearize(f->terms[static_cast<std::size_t>(i)]);
                std::vector<Rational> a(static_cast<std::size_t>(n + m), Rational(0));
                for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = lf.coeff(vars[static_cast<std::size_t>(j)]);
                a[static_cast<std::size_t>(n + i)] = Rational(-1);
                // keep only the tracks that matter, then widen
                std::vector<Rational> small;
                std::vector<int> pos;
                for (int j = 0; j < n + m; ++j)
                    if (!a[static_cast<std::size_t>(j)].is_zero()) {
                        small.push_back(a[static_cast<std::size_t>(j)]);
                        pos.push_back(j);
                    }
                Automaton eq = automata::linear(base, small, automata::Rel::Eq, -lf.constant);
                A = automata::product(A, automata::cylindrify(eq, n + m, pos), BoolOp::And);
            }
            for (int i = n + m - 1; i >= n; --i) A = automata::project(A, i);
            out = A;
            break;
        }
        case K::Not: out = automata::complement(sub(f->kids[0])); break;
        case K::And: out = automata::product(sub(f->kids[0]), sub(f->kids[1]), BoolOp::And); break;
        case K::Or: out = automata::product(sub(f->kids[0]), sub(f->kids[1]), BoolOp::Or); break;
        case K::Implies:
            out = automata::complement(automata::product(sub(f->kids[0]), sub(f->kids[1]), BoolOp::Minus));
            break;
        case K::Iff:
            out = automata::complement(automata::product(sub(f->kids[0]), sub(f->kids[1]), BoolOp::Xor));
            break;
        case K::Exists:
        case K::Forall: {
            const auto& body = f->kids[0];
            auto bv = free_vars(body);
            Automaton B = build(body, base, bv);
            auto it = std::find(bv.begin(), bv.end(), f->var);
            if (it != bv.end()) {
                int track = static_cast<int>(it - bv.begin());
                if (f->kind == K::Exists) B = automata::project(B, track);
                else B = automata::complement(automata::project(automata::complement(B), track));
                bv.erase(it);
            }
            out = align(B, bv, vars);
            break;
        }
    }
    cache_.emplace(key, out);
    return out;
}

Compiled Compiler::compile(const FormulaPtr& f) {
    auto vars = free_vars(f);
    return {build(f, base_for(f), vars), vars};
}

Automaton Compiler::compile_as(const FormulaPtr& f, const std::vector<std::string>& vars) {
    Compiled c = compile(f);
    return align(c.automaton, c.vars, vars);
}

namespace {

// Strips a block of q-quantifiers, pushing negations through the opposite
// quantifier and cancelling double negations.
FormulaPtr peel(FormulaPtr f, Formula::Kind q) {
    using K = Formula::Kind;
    const K other = q == K::Exists ? K::Forall : K::Exists;
    for (;;) {
        if (f->kind == q) {
            f = f->kids[0];
        } else if (f->kind == K::Not && f->kids[0]->kind == other) {
            f = f_not(f->kids[0]->kids[0]);
        } else if (f->kind == K::Not && f->kids[0]->kind == K::Not) {
            f = f->kids[0]->kids[0];
        } else {
            return f;
        }
    }
}

}  // namespace

bool Compiler::decide(const FormulaPtr& sentence) {
    using K = Formula::Kind;
    auto fv = free_vars(sentence);
    if (!fv.empty()) throw std::invalid_argument("not a sentence: free variable " + fv.front());
    // a leading block needs no projection: emptiness of the matrix decides it
    if (sentence->kind == K::Not) return !decide(sentence->kids[0]);
    if (sentence->kind == K::Exists) return !automata::is_empty(compile(peel(sentence, K::Exists)).automaton);
    if (sentence->kind == K::Forall)
        return automata::is_empty(automata::complement(compile(peel(sentence, K::Forall)).automaton));
    return !automata::is_empty(compile(sentence).automaton);
}

std::optional<std::map<std::string, Rational>> Compiler::witness(const FormulaPtr& f) {
    Compiled c = compile(f);
    auto lasso = automata::find_witness(c.automaton);
    if (!lasso) return std::nullopt;
    auto values = automata::decode(c.automaton.base(), c.automaton.arity(), *lasso);
    std::map<std::string, Rational> env;
    for (std::size_t i = 0; i < c.vars.size(); ++i) env[c.vars[i]] = values[i];
    bool ok = quantifier_free(f) ? evaluate(f, env) : automata::accepts_real(c.automaton, values);
    if (!ok) throw std::logic_error("witness failed re-evaluation");
    return env;
}

bool Compiler::equivalent(const FormulaPtr& f, const FormulaPtr& g) {
    auto vars = free_vars(f);
    for (const auto& v : free_vars(g))
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::set<int> bases = bases_of(f);
    for (int b : bases_of(g)) bases.insert(b);
    int base = forced_ ? *forced_ : working_base(bases);
    Compiler same(base);
    same.cache_ = cache_;
    same.atoms_ = atoms_;
    Automaton A = align(same.build(f, base, free_vars(f)), free_vars(f), vars);
    Automaton B = align(same.build(g, base, free_vars(g)), free_vars(g), vars);
    cache_ = std::move(same.cache_);
    atoms_ = std::move(same.atoms_);
    return automata::equivalent(A, B);
}

namespace {

Rational eval_term(const TermPtr& t, const std::map<std::string, Rational>& env) {
    LinearForm lf = linearize(t);
    Rational v = lf.constant;
    for (const auto& [name, c] : lf.coeffs) {
        auto it = env.find(name);
        if (it == env.end()) throw std::invalid_argument("unassigned variable " + name);
        v += c * it->second;
    }
    return v;
}

}  // namespace

bool evaluate(const FormulaPtr& f, const std::map<std::string, Rational>& env) {
    using K = Formula::Kind;
    auto arg = [&](std::size_t i) { return eval_term(f->terms[i], env); };
    switch (f->kind) {
        case K::True: return true;
        case K::False: return false;
        case K::Less: return arg(0) < arg(1);
        case K::Leq: return arg(0) <= arg(1);
        case K::Eq: return arg(0) == arg(1);
        case K::Not: return !evaluate(f->kids[0], env);
        case K::And: return evaluate(f->kids[0], env) && evaluate(f->kids[1], env);
        case K::Or: return evaluate(f->kids[0], env) || evaluate(f->kids[1], env);
        case K::Implies: return !evaluate(f->kids[0], env) || evaluate(f->kids[1], env);
        case K::Iff: return evaluate(f->kids[0], env) == evaluate(f->kids[1], env);
        case K::Exists:
        case K::Forall: throw std::invalid_argument("evaluate: quantifiers are not supported");
        case K::Atom: break;
    }
    const int r = f->base;
    switch (f->pred) {
        case Pred::Cantor: return cset::contains(cset::CantorParams(r, f->K), arg(0));
        case Pred::V: return exact::digit_predicate(exact::DigitKind::V, r, arg(0), arg(1), arg(2));
        case Pred::U: return exact::digit_predicate(exact::DigitKind::U, r, arg(0), arg(1), arg(2));
        case Pred::W: return exact::digit_predicate(exact::DigitKind::W, r, arg(0), arg(1), arg(2));
        case Pred::Int: return arg(0).is_integer();
        case Pred::InvPow: {
            auto n = exact::log_of_power(arg(0), r);
            return n && *n <= 0;
        }
        case Pred::Pow: return exact::log_of_power(arg(0), r).has_value();
        case Pred::Dfin: {
            Rational x = arg(0);
            return x >= Rational(0) && x < Rational(1) && exact::expand(x, r).terminates();
        }
    }
    return false;
}

}  // namespace cantor::logic
