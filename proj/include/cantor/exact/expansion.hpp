#pragma once

// Eventually periodic base-r expansions in r's-complement form:
//
//   x = -[a_p = r-1] r^p + sum_{i<p} a_i r^i
//
// A word a_p a_{p-1} ... a_0 * a_{-1} a_{-2} ... with sign digit a_p in {0, r-1}.
// Prepending another copy of the sign digit does not change the value.

#include "cantor/exact/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cantor::exact {

using Digits = std::vector<int>;

/// r^exponent, kept symbolic so printing and comparisons stay exact.
struct PowerOfBase {
    long base = 2;
    long exponent = 0;

    Rational value() const { return rpow(base, exponent); }
    std::string str() const;
    friend bool operator==(const PowerOfBase&, const PowerOfBase&) = default;
};

/// If u = r^n for some integer n, returns n.
std::optional<long> log_of_power(const Rational& u, long r);

class PeriodicReal {
public:
    PeriodicReal(int base, int sign_digit, Digits integer_digits, Digits frac_preperiod,
                 Digits frac_period);

    int base() const { return base_; }
    int sign_digit() const { return sign_; }
    const Digits& integer_digits() const { return int_; }
    const Digits& frac_preperiod() const { return pre_; }
    const Digits& frac_period() const { return per_; }

    /// Number of integer digits below the sign digit (the "p" of the word).
    long int_length() const { return static_cast<long>(int_.size()); }

    /// Digit in the position corresponding to r^n. Positions at or above p
    /// read the sign digit.
    int digit_at(long n) const;

    /// True when the fractional part is eventually 0.
    bool terminates() const { return per_.size() == 1 && per_[0] == 0; }

    /// Same word with `extra` more sign digits in front.
    PeriodicReal padded(long extra) const;

    /// Shortest preperiod, primitive period. Does not rewrite a (r-1) tail.
    PeriodicReal normalized() const;

    /// "3: 0.12(02)": base, sign + integer digits, preperiod, (period).
    std::string str() const;

    friend bool operator==(const PeriodicReal&, const PeriodicReal&) = default;

private:
    int base_;
    int sign_;
    Digits int_;
    Digits pre_;
    Digits per_;
};

/// Canonical expansion: the one whose fractional digits are not eventually r-1.
PeriodicReal expand(const Rational& q, int r);

/// Exact value of an eventually periodic word.
Rational eval(const PeriodicReal& w);

/// The second expansion (ending in r-1 repeated) of a terminating nonzero
/// rational. Zero's all-(r-1) word is not treated as an expansion of 0.
std::optional<PeriodicReal> dual_expansion(const Rational& q, int r);

/// Every base-r expansion of q (one or two).
std::vector<PeriodicReal> all_expansions(const Rational& q, int r);

enum class DigitKind { V, U, W };

/// V: some expansion has digit k at u. U: the canonical one does. W: V on
/// [0,1] x r^{-N} x digits. Out-of-domain arguments give false.
bool digit_predicate(DigitKind kind, int r, const Rational& x, const Rational& u,
                     const Rational& k);

/// V evaluated through the canonical-digit characterization of the second
/// expansion: U(x,u,k) or (the last nonzero canonical digit sits at v, and
/// either u = v with U(x,u,k+1), or u < v with k = r-1).
bool v_from_u(int r, const Rational& x, const Rational& u, const Rational& k);

}  // namespace cantor::exact
