#pragma once

// Compilation of formulas to weak automata, decision, witnesses.

#include "cantor/automata/automaton.hpp"
#include "cantor/logic/ast.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cantor::logic {

/// Atoms over multiplicatively independent bases.
class BaseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Compiled {
    automata::Automaton automaton;
    std::vector<std::string> vars;  ///< track i holds vars[i]
};

/// Working base for a set of atom bases: t^g where every base is a power of t
/// and g is the gcd of the exponents; 2 if there are none. Throws BaseError.
int working_base(const std::set<int>& bases);

class Compiler {
public:
    /// `base` forces the working base (it must be compatible with the atoms).
    explicit Compiler(std::optional<int> base = std::nullopt) : forced_(base) {}

    Compiled compile(const FormulaPtr& f);
    /// Tracks ordered as `vars` (a superset of the free variables).
    automata::Automaton compile_as(const FormulaPtr& f, const std::vector<std::string>& vars);

    bool decide(const FormulaPtr& sentence);
    /// Empty if unsatisfiable; otherwise values for the free variables.
    std::optional<std::map<std::string, Rational>> witness(const FormulaPtr& f);
    /// Same language over the union of the free variables.
    bool equivalent(const FormulaPtr& f, const FormulaPtr& g);

    int base_for(const FormulaPtr& f) const;
    std::size_t cache_size() const { return cache_.size(); }

private:
    std::optional<int> forced_;
    std::map<std::string, automata::Automaton> cache_;
    std::map<std::string, automata::Automaton> atoms_;

    automata::Automaton build(const FormulaPtr& f, int base, const std::vector<std::string>& vars);
    automata::Automaton atom_automaton(const Formula& f, int base);
};

/// Exact evaluation of a quantifier-free formula. Throws std::invalid_argument
/// on quantifiers or unassigned variables.
bool evaluate(const FormulaPtr& f, const std::map<std::string, Rational>& env);

}  // namespace cantor::logic
