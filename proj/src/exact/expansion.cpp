#include "cantor/exact/expansion.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cantor::exact {

std::string PowerOfBase::str() const { return std::to_string(base) + "^" + std::to_string(exponent); }

std::optional<long> log_of_power(const Rational& u, long r) {
    if (u.sign() <= 0 || r < 2) return std::nullopt;
    BigInt num = u.numerator(), den = u.denominator();
    auto count = [r](BigInt v) -> std::optional<long> {
        long n = 0;
        while (v > 1) {
            if (v % r != 0) return std::nullopt;
            v /= r;
            ++n;
        }
        return n;
    };
    if (den == 1) return count(num);
    if (num != 1) return std::nullopt;
    auto n = count(den);
    if (!n) return std::nullopt;
    return -*n;
}

PeriodicReal::PeriodicReal(int base, int sign_digit, Digits integer_digits, Digits frac_preperiod,
                           Digits frac_period)
    : base_(base), sign_(sign_digit), int_(std::move(integer_digits)), pre_(std::move(frac_preperiod)),
      per_(std::move(frac_period)) {
    if (base_ < 2) throw std::invalid_argument("base must be >= 2");
    if (sign_ != 0 && sign_ != base_ - 1) throw std::invalid_argument("sign digit must be 0 or r-1");
    if (per_.empty()) throw std::invalid_argument("period must be nonempty");
    auto check = [this](const Digits& ds) {
        for (int d : ds)
            if (d < 0 || d >= base_) throw std::invalid_argument("digit out of range");
    };
    check(int_);
    check(pre_);
    check(per_);
}

int PeriodicReal::digit_at(long n) const {
    long p = int_length();
    if (n >= p) return sign_;
    if (n >= 0) return int_[static_cast<std::size_t>(p - 1 - n)];
    std::size_t i = static_cast<std::size_t>(-n - 1);
    if (i < pre_.size()) return pre_[i];
    return per_[(i - pre_.size()) % per_.size()];
}

PeriodicReal PeriodicReal::padded(long extra) const {
    Digits d(static_cast<std::size_t>(extra), sign_);
    d.insert(d.end(), int_.begin(), int_.end());
    return PeriodicReal(base_, sign_, std::move(d), pre_, per_);
}

PeriodicReal PeriodicReal::normalized() const {
    Digits per = per_;
    for (std::size_t len = 1; len < per.size(); ++len) {
        if (per.size() % len != 0) continue;
        bool ok = true;
        for (std::size_t i = len; i < per.size() && ok; ++i) ok = per[i] == per[i - len];
        if (ok) {
            per.resize(len);
            break;
        }
    }
    Digits pre = pre_;
    while (!pre.empty() && pre.back() == per.back()) {
        pre.pop_back();
        std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
    }
    return PeriodicReal(base_, sign_, int_, std::move(pre), std::move(per));
}

std::string PeriodicReal::str() const {
    std::ostringstream os;
    auto put = [&os, this](int d) {
        if (base_ <= 10)
            os << d;
        else
            os << '[' << d << ']';
    };
    os << base_ << ": ";
    put(sign_);
    for (int d : int_) put(d);
    os << '.';
    for (int d : pre_) put(d);
    os << '(';
    for (int d : per_) put(d);
    os << ')';
    return os.str();
}

PeriodicReal expand(const Rational& q, int r) {
    if (r < 2) throw std::invalid_argument("base must be >= 2");
    long p = 0;
    Rational y = q;
    int sign = 0;
    if (q.sign() >= 0) {
        while (q >= rpow(r, p)) ++p;
    } else {
        while (q < -rpow(r, p)) ++p;
        sign = r - 1;
        y = q + rpow(r, p);
    }
    BigInt ip = y.floor();
    Digits int_digits(static_cast<std::size_t>(p), 0);
    for (long i = p - 1; i >= 0; --i) {
        BigInt d = ip % r;
        int_digits[static_cast<std::size_t>(i)] = static_cast<int>(d.get_si());
        ip /= r;
    }
    Rational f = y - Rational(y.floor());
    BigInt rem = f.numerator(), den = f.denominator();
    std::map<BigInt, std::size_t> seen;
    Digits digits;
    while (!seen.contains(rem)) {
        seen.emplace(rem, digits.size());
        BigInt t = rem * r;
        BigInt d = t / den;
        digits.push_back(static_cast<int>(d.get_si()));
        rem = t % den;
    }
    std::size_t start = seen.at(rem);
    Digits pre(digits.begin(), digits.begin() + static_cast<long>(start));
    Digits per(digits.begin() + static_cast<long>(start), digits.end());
    return PeriodicReal(r, sign, std::move(int_digits), std::move(pre), std::move(per));
}

Rational eval(const PeriodicReal& w) {
    const long r = w.base();
    Rational value;
    for (int d : w.integer_digits()) value = value * Rational(r) + Rational(d);
    if (w.sign_digit() == r - 1) value -= rpow(r, w.int_length());
    Rational scale(1);
    for (int d : w.frac_preperiod()) {
        scale /= Rational(r);
        value += Rational(d) * scale;
    }
    Rational block;
    for (int d : w.frac_period()) block = block * Rational(r) + Rational(d);
    Rational denom = rpow(r, static_cast<long>(w.frac_period().size())) - Rational(1);
    value += scale * block / denom;
    return value;
}

std::optional<PeriodicReal> dual_expansion(const Rational& q, int r) {
    if (q.is_zero()) return std::nullopt;
    PeriodicReal c = expand(q, r);
    if (!c.terminates()) return std::nullopt;
    Digits ints = c.integer_digits();
    Digits pre = c.frac_preperiod();
    // Find the least significant nonzero digit below the sign.
    auto last_nonzero = [](const Digits& ds) -> long {
        for (long i = static_cast<long>(ds.size()) - 1; i >= 0; --i)
            if (ds[static_cast<std::size_t>(i)] != 0) return i;
        return -1;
    };
    long fi = last_nonzero(pre);
    if (fi >= 0) {
        pre[static_cast<std::size_t>(fi)] -= 1;
        for (std::size_t i = static_cast<std::size_t>(fi) + 1; i < pre.size(); ++i) pre[i] = r - 1;
        return PeriodicReal(r, c.sign_digit(), ints, pre, {r - 1}).normalized();
    }
    long ii = last_nonzero(ints);
    if (ii < 0) {
        // q = -r^p: the borrow reaches the sign digit, so widen by one.
        ints.insert(ints.begin(), c.sign_digit());
        ii = 0;
    }
    ints[static_cast<std::size_t>(ii)] -= 1;
    for (std::size_t i = static_cast<std::size_t>(ii) + 1; i < ints.size(); ++i) ints[i] = r - 1;
    for (int& d : pre) d = r - 1;
    return PeriodicReal(r, c.sign_digit(), ints, pre, {r - 1}).normalized();
}

std::vector<PeriodicReal> all_expansions(const Rational& q, int r) {
    std::vector<PeriodicReal> out{expand(q, r)};
    if (auto d = dual_expansion(q, r)) out.push_back(*d);
    return out;
}

namespace {

std::optional<int> as_digit(const Rational& k, int r) {
    if (!k.is_integer()) return std::nullopt;
    BigInt n = k.numerator();
    if (n < 0 || n >= r) return std::nullopt;
    return static_cast<int>(n.get_si());
}

bool canonical_digit_is(const PeriodicReal& c, long pos, long k) { return c.digit_at(pos) == k; }

}  // namespace

bool digit_predicate(DigitKind kind, int r, const Rational& x, const Rational& u, const Rational& k) {
    if (r < 2) return false;
    auto n = log_of_power(u, r);
    auto digit = as_digit(k, r);
    if (!n || !digit) return false;
    if (kind == DigitKind::W) {
        if (x.sign() < 0 || x > Rational(1) || *n > 0) return false;
        kind = DigitKind::V;
    }
    if (kind == DigitKind::U) return expand(x, r).digit_at(*n) == *digit;
    for (const auto& w : all_expansions(x, r))
        if (w.digit_at(*n) == *digit) return true;
    return false;
}

bool v_from_u(int r, const Rational& x, const Rational& u, const Rational& k) {
    auto n = log_of_power(u, r);
    if (!n || !k.is_integer()) return false;
    if (!as_digit(k, r)) return false;
    long kv = k.numerator().get_si();
    PeriodicReal c = expand(x, r);
    if (canonical_digit_is(c, *n, kv)) return true;
    if (!c.terminates()) return false;  // no v can have only zeros below it
    const long lo = -static_cast<long>(c.frac_preperiod().size()) - 1;
    const long hi = c.int_length() + 1;
    for (long m = lo; m <= hi; ++m) {
        if (canonical_digit_is(c, m, 0)) continue;  // need not U(x, v, 0)
        bool zeros_below = true;
        for (long t = m - 1; t >= lo && zeros_below; --t) zeros_below = canonical_digit_is(c, t, 0);
        if (!zeros_below) continue;
        if (*n > m) continue;  // above v both expansions agree
        if (*n == m ? canonical_digit_is(c, *n, kv + 1) : kv == r - 1) return true;
    }
    return false;
}

}  // namespace cantor::exact
