#pragma once

// Exact rationals. Thin value wrapper over GMP so the rest of the code never
// touches mpq_t directly and always sees a canonical (reduced) fraction.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor {

using BigInt = mpz_class;

class Rational {
public:
    Rational() : q_(0) {}
    Rational(long v) : q_(v) {}                       // NOLINT: implicit by design of numeric literals
    Rational(int v) : q_(static_cast<long>(v)) {}     // NOLINT
    Rational(const BigInt& v) : q_(v) {}              // NOLINT
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den);

    static Rational parse(std::string_view text);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }

    /// Largest integer <= this.
    BigInt floor() const;
    BigInt ceil() const;
    Rational abs() const { return Rational(::abs(q_)); }
    Rational frac() const { return *this - Rational(floor()); }

    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return q_; }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// base^exp for exp >= 0.
BigInt ipow(const BigInt& base, unsigned long exp);
/// base^exp as a rational, exp may be negative.
Rational rpow(long base, long exp);

struct RationalHash {
    std::size_t operator()(const Rational& q) const;
};

}  // namespace cantor
