#pragma once

// Atomic relations. Every builder returns a saturated (all encodings of a
// vector agree), padding-closed automaton.

#include "cantor/automata/automaton.hpp"
#include "cantor/cset/cantor_set.hpp"

#include <vector>

namespace cantor::automata {

enum class Rel { Eq, Less };

/// sum_i coeffs[i] x_i  (= or <)  rhs, over coeffs.size() tracks.
Automaton linear(int base, const std::vector<Rational>& coeffs, Rel rel, const Rational& rhs);

Automaton atom_equal(int base);             ///< x = y
Automaton atom_sum(int base);               ///< x + y = z
Automaton atom_less(int base);              ///< x < y
Automaton atom_const(int base, const Rational& q);  ///< x = q
Automaton atom_int(int base);               ///< x integer
Automaton atom_inv_pow(int base);           ///< x in r^-N (1 included)
Automaton atom_pow(int base);               ///< x in r^Z
Automaton atom_cantor(const cset::CantorParams& P);
/// Tracks (x, u, k): u in r^Z, k a digit, some expansion of x has digit k at u.
Automaton atom_V(int base);
/// Same with the canonical expansion.
Automaton atom_U(int base);
/// V restricted to x in [0,1], u in r^-N.
Automaton atom_W(int base);
/// Finite base-r expansions in [0,1), from its defining formula over W.
/// Always throws NonWeakError: the set is not weakly recognizable.
Automaton atom_dfin(int base);

/// exists y (x_track = y and A[y / x_track]).
Automaton saturate(const Automaton& A, int track);
Automaton saturate_all(const Automaton& A);

}  // namespace cantor::automata
