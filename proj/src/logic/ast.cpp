#include "cantor/logic/ast.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

namespace cantor::logic {

TermPtr Term::var(std::string n) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Var;
    t->name = std::move(n);
    return t;
}

TermPtr Term::constant(Rational q) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Const;
    t->value = std::move(q);
    return t;
}

TermPtr Term::add(TermPtr x, TermPtr y) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Add;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
}

TermPtr Term::scale(Rational q, TermPtr x) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Scale;
    t->value = std::move(q);
    t->a = std::move(x);
    return t;
}

Rational& LinearForm::coeff(const std::string& v) {
    for (auto& [name, c] : coeffs)
        if (name == v) return c;
    coeffs.emplace_back(v, Rational(0));
    return coeffs.back().second;
}

bool LinearForm::is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& p) { return p.second.is_zero(); });
}

namespace {

void linearize_into(const TermPtr& t, const Rational& factor, LinearForm& out) {
    switch (t->kind) {
        case Term::Kind::Var:
            out.coeff(t->name) += factor;
            break;
        case Term::Kind::Const:
            out.constant += factor * t->value;
            break;
        case Term::Kind::Add:
            linearize_into(t->a, factor, out);
            linearize_into(t->b, factor, out);
            break;
        case Term::Kind::Scale:
            linearize_into(t->a, factor * t->value, out);
            break;
    }
}

}  // namespace

LinearForm linearize(const TermPtr& t) {
    LinearForm f;
    linearize_into(t, Rational(1), f);
    return f;
}

int pred_arity(Pred p) {
    switch (p) {
        case Pred::V:
        case Pred::U:
        case Pred::W:
            return 3;
        default:
            return 1;
    }
}

std::string pred_name(Pred p) {
    switch (p) {
        case Pred::Cantor: return "C";
        case Pred::V: return "Vr";
        case Pred::U: return "Ur";
        case Pred::W: return "Wr";
        case Pred::Int: return "Int";
        case Pred::InvPow: return "InvPow";
        case Pred::Pow: return "Pow";
        case Pred::Dfin: return "Dfin";
    }
    return "?";
}

FormulaPtr Formula::make(Kind k, std::vector<FormulaPtr> kids) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->kids = std::move(kids);
    return f;
}

FormulaPtr Formula::compare(Kind k, TermPtr a, TermPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->terms = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr Formula::atom(Pred p, int base, std::set<int> K, std::vector<TermPtr> args) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Atom;
    f->pred = p;
    f->base = base;
    f->K = std::move(K);
    f->terms = std::move(args);
    return f;
}

FormulaPtr Formula::quant(Kind k, std::string v, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->var = std::move(v);
    f->kids = {std::move(body)};
    return f;
}

FormulaPtr f_not(FormulaPtr a) { return Formula::make(Formula::Kind::Not, {std::move(a)}); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return Formula::make(Formula::Kind::And, {std::move(a), std::move(b)}); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return Formula::make(Formula::Kind::Or, {std::move(a), std::move(b)}); }

std::string to_string(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Var: return t->name;
        case Term::Kind::Const: return t->value.str();
        case Term::Kind::Add: return "(" + to_string(t->a) + " + " + to_string(t->b) + ")";
        case Term::Kind::Scale: return "(" + t->value.str() + " * " + to_string(t->a) + ")";
    }
    return "?";
}

std::string to_string(const FormulaPtr& f) {
    using K = Formula::Kind;
    auto bin = [&](const char* op) { return "(" + to_string(f->kids[0]) + " " + op + " " + to_string(f->kids[1]) + ")"; };
    switch (f->kind) {
        case K::True: return "true";
        case K::False: return "false";
        case K::Less: return to_string(f->terms[0]) + " < " + to_string(f->terms[1]);
        case K::Leq: return to_string(f->terms[0]) + " <= " + to_string(f->terms[1]);
        case K::Eq: return to_string(f->terms[0]) + " = " + to_string(f->terms[1]);
        case K::Atom: {
            std::string s = pred_name(f->pred);
            if (f->pred == Pred::Cantor) {
                s += "[" + std::to_string(f->base) + ",{";
                bool first = true;
                for (int k : f->K) {
                    if (!first) s += ",";
                    s += std::to_string(k);
                    first = false;
                }
                s += "}]";
            } else if (f->pred != Pred::Int) {
                s += "[" + std::to_string(f->base) + "]";
            }
            s += "(";
            for (std::size_t i = 0; i < f->terms.size(); ++i) s += (i ? ", " : "") + to_string(f->terms[i]);
            return s + ")";
        }
        case K::Not: return "!(" + to_string(f->kids[0]) + ")";
        case K::And: return bin("&");
        case K::Or: return bin("|");
        case K::Implies: return bin("->");
        case K::Iff: return bin("<->");
        case K::Exists: return "(E " + f->var + ". " + to_string(f->kids[0]) + ")";
        case K::Forall: return "(A " + f->var + ". " + to_string(f->kids[0]) + ")";
    }
    return "?";
}

namespace {

void term_vars(const TermPtr& t, const std::set<std::string>& bound, std::vector<std::string>& out) {
    switch (t->kind) {
        case Term::Kind::Var:
            if (!bound.contains(t->name) && std::find(out.begin(), out.end(), t->name) == out.end())
                out.push_back(t->name);
            break;
        case Term::Kind::Const: break;
        case Term::Kind::Add:
            term_vars(t->a, bound, out);
            term_vars(t->b, bound, out);
            break;
        case Term::Kind::Scale: term_vars(t->a, bound, out); break;
    }
}

void formula_vars(const FormulaPtr& f, std::set<std::string>& bound, std::vector<std::string>& out) {
    for (const auto& t : f->terms) term_vars(t, bound, out);
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) {
        bool was = bound.contains(f->var);
        bound.insert(f->var);
        formula_vars(f->kids[0], bound, out);
        if (!was) bound.erase(f->var);
        return;
    }
    for (const auto& k : f->kids) formula_vars(k, bound, out);
}

std::string fresh_name(const std::string& base) {
    static std::atomic<long> counter{0};
    std::string stem = base.substr(0, base.find("__"));
    return stem + "__" + std::to_string(++counter);
}

}  // namespace

std::vector<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> bound;
    std::vector<std::string> out;
    formula_vars(f, bound, out);
    return out;
}

TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& s) {
    switch (t->kind) {
        case Term::Kind::Var: {
            auto it = s.find(t->name);
            return it == s.end() ? t : it->second;
        }
        case Term::Kind::Const: return t;
        case Term::Kind::Add: return Term::add(substitute(t->a, s), substitute(t->b, s));
        case Term::Kind::Scale: return Term::scale(t->value, substitute(t->a, s));
    }
    return t;
}

FormulaPtr substitute(const FormulaPtr& f, const std::map<std::string, TermPtr>& s) {
    if (s.empty()) return f;
    auto g = std::make_shared<Formula>(*f);
    for (auto& t : g->terms) t = substitute(t, s);
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) {
        // rename the bound variable to keep substituted terms from being captured
        std::map<std::string, TermPtr> inner = s;
        inner.erase(f->var);
        std::string v = fresh_name(f->var);
        inner[f->var] = Term::var(v);
        g->var = v;
        g->kids[0] = substitute(f->kids[0], inner);
        return g;
    }
    for (auto& k : g->kids) k = substitute(k, s);
    return g;
}

std::set<int> bases_of(const FormulaPtr& f) {
    std::set<int> out;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
        if (g->kind == Formula::Kind::Atom && g->pred != Pred::Int) out.insert(g->base);
        for (const auto& k : g->kids) walk(k);
    };
    walk(f);
    return out;
}

bool quantifier_free(const FormulaPtr& f) {
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) return false;
    return std::all_of(f->kids.begin(), f->kids.end(), quantifier_free);
}

}  // namespace cantor::logic
