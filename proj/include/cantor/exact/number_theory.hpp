#pragma once

// Finite base-r expansions (the set D_r of [0,1)), the omega-order on D_r, and
// the base-compatibility computations used when several bases are mixed.

#include "cantor/exact/expansion.hpp"
#include "cantor/exact/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cantor::exact {

/// Prime factorization of a small positive integer, ascending primes.
std::vector<std::pair<long, int>> factorize(long n);

/// q in [0,1) with a finite base-r expansion, i.e. the denominator has only
/// primes of r.
bool in_Dr(const Rational& q, int r);

/// tau_r(q): r^{-d}, d minimal with q r^d integral. tau_r(0) = r^0.
/// Throws std::domain_error outside D_r.
PowerOfBase tau(const Rational& q, int r);

/// tau via the prime-exponent formula min_i floor(d_i / alpha_i). Exposed for
/// cross-checking; tau() asserts agreement with it.
PowerOfBase tau_by_prime_exponents(const Rational& q, int r);

/// The omega-order on D_r: larger tau first, then the usual order.
bool prec(const Rational& d, const Rational& e, int r);

/// First `count` elements of (D_r, prec), generated level by level.
std::vector<Rational> enumerate_Dr(int r, std::size_t count);

/// The prec-least element of (a,b) intersected with D_r.
Rational omega_min_interval(const Rational& a, const Rational& b, int r);

struct CommonBase {
    long base;
    long r_exponent;
    long s_exponent;
    friend bool operator==(const CommonBase&, const CommonBase&) = default;
};

/// Smallest t with r = t^a and s = t^b, if log_r(s) is rational.
std::optional<CommonBase> common_base(long r, long s);

/// Smallest t with n = t^a for some a >= 1, and that a.
std::pair<long, long> primitive_root(long n);

/// Result of the base-change map r^{-d} -> r^{-ceil(log_s(r) d)}, with the two
/// candidate compositions of tau_r and theta (theta(x) = max (0,x] cap s^{-N})
/// evaluated alongside for comparison.
struct Case2Map {
    PowerOfBase value;                  ///< r^{-ceil(log_s(r) d)}
    PowerOfBase theta_of_power;         ///< theta(r^{-d}), a power of s
    PowerOfBase tau_after_theta;        ///< tau_r(theta(r^{-d}))
    bool tau_after_theta_matches;       ///< tau_after_theta == value
};

/// Requires supp(s) subset of supp(r) and r != s; throws std::domain_error otherwise.
Case2Map case2_f(long d, long r, long s);

/// Smallest e with s^e >= r^d (exact integer comparison).
long ceil_log_ratio(long d, long r, long s);

/// The part of r built from primes it shares with s, with r's exponents.
long shared_prime_part(long r, long s);

/// u^{-d} with u = shared_prime_part(r, s).
Rational smallest_with_tau(long r, long s, long d);

}  // namespace cantor::exact
