#include "cantor/exact/number_theory.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cantor::exact {

std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

namespace {

bool smooth_over(BigInt den, long r) {
    for (auto [p, e] : factorize(r)) {
        (void)e;
        while (den % p == 0) den /= p;
    }
    return den == 1;
}

int valuation(BigInt n, long p) {
    if (n == 0) return 0;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

bool in_Dr(const Rational& q, int r) {
    if (q.sign() < 0 || q >= Rational(1)) return false;
    return smooth_over(q.denominator(), r);
}

PowerOfBase tau_by_prime_exponents(const Rational& q, int r) {
    if (q.is_zero()) return {r, 0};
    long e = std::numeric_limits<long>::max();
    for (auto [p, alpha] : factorize(r)) {
        long d = valuation(q.numerator(), p) - valuation(q.denominator(), p);
        e = std::min(e, floor_div(d, alpha));
    }
    return {r, e};
}

PowerOfBase tau(const Rational& q, int r) {
    if (!in_Dr(q, r)) throw std::domain_error("tau: " + q.str() + " is not in D_" + std::to_string(r));
    if (q.is_zero()) return {r, 0};
    long d = 0;
    Rational scaled = q;
    while (!scaled.is_integer()) {
        scaled *= Rational(r);
        ++d;
    }
    PowerOfBase by_search{r, -d};
    if (!(tau_by_prime_exponents(q, r) == by_search)) throw std::logic_error("tau computations disagree");
    return by_search;
}

bool prec(const Rational& d, const Rational& e, int r) {
    long td = tau(d, r).exponent, te = tau(e, r).exponent;
    if (td != te) return td > te;
    return d < e;
}

std::vector<Rational> enumerate_Dr(int r, std::size_t count) {
    std::vector<Rational> out;
    if (count == 0) return out;
    out.emplace_back(0);
    BigInt scale = 1;
    for (long level = 1; out.size() < count; ++level) {
        scale *= r;
        for (BigInt k = 1; k < scale && out.size() < count; ++k) {
            if (k % r == 0) continue;
            out.emplace_back(k, scale);
        }
    }
    return out;
}

Rational omega_min_interval(const Rational& a, const Rational& b, int r) {
    if (!(a < b)) throw std::domain_error("omega_min_interval: need a < b");
    if (a.sign() < 0 || b > Rational(1))
        throw std::domain_error("omega_min_interval: interval must lie in [0,1]");
    BigInt scale = 1;
    for (long level = 1;; ++level) {
        scale *= r;
        // smallest k with k/scale > a
        BigInt k = (a * Rational(scale)).floor() + 1;
        for (; Rational(k, scale) < b; ++k) {
            if (k % r != 0) return Rational(k, scale);
        }
    }
}

std::pair<long, long> primitive_root(long n) {
    if (n < 2) throw std::invalid_argument("primitive_root: n >= 2");
    for (long a = 62; a >= 1; --a) {
        // integer a-th root by search on t
        long lo = 2, hi = n;
        while (lo <= hi) {
            long mid = lo + (hi - lo) / 2;
            BigInt pw = ipow(BigInt(mid), static_cast<unsigned long>(a));
            if (pw == n) return {mid, a};
            if (pw < n)
                lo = mid + 1;
            else
                hi = mid - 1;
        }
    }
    return {n, 1};
}

std::optional<CommonBase> common_base(long r, long s) {
    if (r < 2 || s < 2) throw std::invalid_argument("common_base: bases must be >= 2");
    auto [tr, ar] = primitive_root(r);
    auto [ts, as] = primitive_root(s);
    if (tr != ts) return std::nullopt;
    return CommonBase{tr, ar, as};
}

long ceil_log_ratio(long d, long r, long s) {
    BigInt target = ipow(BigInt(r), static_cast<unsigned long>(d));
    long e = 0;
    BigInt acc = 1;
    while (acc < target) {
        acc *= s;
        ++e;
    }
    return e;
}

Case2Map case2_f(long d, long r, long s) {
    if (r == s) throw std::domain_error("case2_f: bases must differ");
    for (auto [p, e] : factorize(s)) {
        (void)e;
        if (r % p != 0) throw std::domain_error("case2_f: supp(s) must be contained in supp(r)");
    }
    if (d < 0) throw std::domain_error("case2_f: d must be natural");
    long e = ceil_log_ratio(d, r, s);
    PowerOfBase value{r, -e};
    PowerOfBase theta{s, -e};
    PowerOfBase composed = e == 0 ? PowerOfBase{r, 0} : tau(theta.value(), static_cast<int>(r));
    return Case2Map{value, theta, composed, composed == value};
}

long shared_prime_part(long r, long s) {
    long u = 1;
    for (auto [p, alpha] : factorize(r)) {
        if (s % p != 0) continue;
        for (int i = 0; i < alpha; ++i) u *= p;
    }
    return u;
}

Rational smallest_with_tau(long r, long s, long d) {
    long u = shared_prime_part(r, s);
    if (u == 1) throw std::domain_error("smallest_with_tau: r and s share no prime");
    return rpow(u, -d);
}

}  // namespace cantor::exact
