#pragma once

// Formulas over (R, <, +) with digit and Cantor-set predicates.

#include "cantor/exact/rational.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cantor::logic {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { Var, Const, Add, Scale };
    Kind kind;
    std::string name;  // Var
    Rational value;    // Const, Scale factor
    TermPtr a, b;      // Add: a + b; Scale: value * a

    static TermPtr var(std::string n);
    static TermPtr constant(Rational q);
    static TermPtr add(TermPtr x, TermPtr y);
    static TermPtr scale(Rational q, TermPtr x);
};

/// Sum of coeff * var plus a constant; vars listed in first-occurrence order
/// (a var whose coefficients cancel stays, with coefficient 0).
struct LinearForm {
    std::vector<std::pair<std::string, Rational>> coeffs;
    Rational constant;

    Rational& coeff(const std::string& v);
    bool is_constant() const;
};

LinearForm linearize(const TermPtr& t);

enum class Pred { Cantor, V, U, W, Int, InvPow, Pow, Dfin };

/// Number of arguments and whether the predicate carries a base.
int pred_arity(Pred p);
std::string pred_name(Pred p);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { True, False, Less, Leq, Eq, Atom, Not, And, Or, Implies, Iff, Exists, Forall };
    Kind kind;
    // Less/Leq/Eq: terms[0] op terms[1]; Atom: arguments.
    std::vector<TermPtr> terms;
    Pred pred = Pred::Int;
    int base = 0;
    std::set<int> K;
    std::string var;                 // quantifiers
    std::vector<FormulaPtr> kids;    // Not: 1, binary: 2, quantifiers: 1
    int line = 0, column = 0;

    static FormulaPtr make(Kind k, std::vector<FormulaPtr> kids = {});
    static FormulaPtr compare(Kind k, TermPtr a, TermPtr b);
    static FormulaPtr atom(Pred p, int base, std::set<int> K, std::vector<TermPtr> args);
    static FormulaPtr quant(Kind k, std::string v, FormulaPtr body);
};

FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);

std::string to_string(const TermPtr& t);
/// Fully parenthesized; parses back to the same formula.
std::string to_string(const FormulaPtr& f);

/// Free variables in first-occurrence order of the printed form.
std::vector<std::string> free_vars(const FormulaPtr& f);

/// Capture-avoiding substitution of terms for free variables.
FormulaPtr substitute(const FormulaPtr& f, const std::map<std::string, TermPtr>& s);
TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& s);

/// Every base mentioned by an atom.
std::set<int> bases_of(const FormulaPtr& f);

bool quantifier_free(const FormulaPtr& f);

}  // namespace cantor::logic
