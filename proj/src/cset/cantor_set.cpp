#include "cantor/cset/cantor_set.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cantor::cset {

using exact::Digits;
using exact::PeriodicReal;

CantorParams::CantorParams(int r, std::set<int> K) : r_(r), K_(std::move(K)) {
    if (r_ < 3) throw std::invalid_argument("Cantor set base must be >= 3");
    if (K_.empty()) throw std::invalid_argument("excluded digit set must be nonempty");
    for (int k : K_)
        if (k < 1 || k > r_ - 2)
            throw std::invalid_argument("excluded digits must lie in {1.." + std::to_string(r_ - 2) + "}");
    for (int d = 1; d <= r_ - 2; ++d) {
        if (!K_.contains(d) || K_.contains(d - 1)) continue;
        int m = d;
        while (K_.contains(m)) ++m;
        runs_.push_back({d, m});
        M_.push_back(m);
    }
    v_ = r_;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
        if (runs_[i].length() < v_) {
            v_ = runs_[i].length();
            j_ = static_cast<int>(i) + 1;
        }
    }
}

CantorParams CantorParams::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto fail = [&]() -> CantorParams { throw std::invalid_argument("bad Cantor set spec '" + std::string(text) + "', want C[r,{k1,...}]"); };
    if (s.size() < 8 || s.rfind("C[", 0) != 0 || s.back() != ']') return fail();
    auto comma = s.find(',');
    auto open = s.find('{'), close = s.find('}');
    if (comma == std::string::npos || open != comma + 1 || close == std::string::npos || close + 2 != s.size())
        return fail();
    try {
        int r = std::stoi(s.substr(2, comma - 2));
        std::set<int> K;
        std::stringstream body(s.substr(open + 1, close - open - 1));
        std::string item;
        while (std::getline(body, item, ',')) {
            std::size_t used = 0;
            int k = std::stoi(item, &used);
            if (used != item.size()) return fail();
            K.insert(k);
        }
        return CantorParams(r, std::move(K));
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        return fail();
    }
}

std::string CantorParams::str() const {
    std::string out = "C[" + std::to_string(r_) + ",{";
    bool first = true;
    for (int k : K_) {
        if (!first) out += ',';
        out += std::to_string(k);
        first = false;
    }
    return out + "}]";
}

std::optional<int> CantorParams::floor_in_M(int b) const {
    std::optional<int> best;
    for (int m : M_)
        if (m <= b) best = m;
    return best;
}

std::vector<int> CantorParams::record_runs() const {
    std::vector<int> out;
    int longest = 0;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
        if (runs_[i].length() > longest) {
            longest = runs_[i].length();
            out.push_back(static_cast<int>(i) + 1);
        }
    }
    return out;
}

CantorParams derive_params(int r, const std::set<int>& K) { return CantorParams(r, K); }

std::vector<PeriodicReal> avoiding_expansions(const CantorParams& P, const Rational& x) {
    std::vector<PeriodicReal> out;
    if (x.sign() < 0 || x > Rational(1)) return out;
    for (auto& w : exact::all_expansions(x, P.base())) {
        if (w.sign_digit() != 0) continue;
        if (std::any_of(w.integer_digits().begin(), w.integer_digits().end(), [](int d) { return d != 0; }))
            continue;
        auto ok = [&P](const Digits& ds) { return std::all_of(ds.begin(), ds.end(), [&P](int d) { return P.allowed(d); }); };
        if (ok(w.frac_preperiod()) && ok(w.frac_period())) out.push_back(w);
    }
    return out;
}

bool contains(const CantorParams& P, const Rational& x) { return !avoiding_expansions(P, x).empty(); }

namespace {

// Numerators over r^n of the depth-n endpoints.
void collect_exact(const CantorParams& P, int n, std::vector<Rational>& out) {
    const int r = P.base();
    BigInt scale = ipow(BigInt(r), static_cast<unsigned long>(n));
    std::vector<BigInt> prefixes{BigInt(0)};
    for (int i = 1; i < n; ++i) {
        std::vector<BigInt> next;
        next.reserve(prefixes.size() * static_cast<std::size_t>(r));
        for (const auto& p : prefixes)
            for (int d = 0; d < r; ++d)
                if (P.allowed(d)) next.push_back(p * r + d);
        prefixes.swap(next);
    }
    for (const auto& p : prefixes)
        for (int m : P.M()) out.emplace_back(BigInt(p * r + m), scale);
}

const Run& run_ending_at(const CantorParams& P, int m) {
    for (const auto& run : P.runs())
        if (run.m == m) return run;
    throw std::logic_error("no run ends at digit " + std::to_string(m));
}

// Digits b_1..b_n of an expansion of a number in [0,1].
Digits frac_digits(const PeriodicReal& w, int n) {
    Digits out;
    for (int i = 1; i <= n; ++i) out.push_back(w.digit_at(-i));
    return out;
}

}  // namespace

std::vector<Rational> right_endpoints(const CantorParams& P, int n, EndpointMode mode) {
    if (n < 1) throw std::domain_error("right_endpoints: n must be >= 1");
    std::vector<Rational> out;
    int from = mode == EndpointMode::exact_depth ? n : 1;
    for (int depth = from; depth <= n; ++depth) collect_exact(P, depth, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CompInterval interval_at(const CantorParams& P, const Rational& d) {
    auto bad = [&]() -> CompInterval { throw std::domain_error(d.str() + " is not a right endpoint of " + P.str()); };
    if (d.sign() <= 0 || d >= Rational(1)) return bad();
    PeriodicReal w = exact::expand(d, P.base());
    if (!w.terminates()) return bad();
    const Digits& b = w.frac_preperiod();
    if (b.empty()) return bad();
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (!P.allowed(b[i])) return bad();
    int last = b.back();
    if (std::find(P.M().begin(), P.M().end(), last) == P.M().end()) return bad();
    const Run& run = run_ending_at(P, last);
    int n = static_cast<int>(b.size());
    return {d - Rational(run.length()) * rpow(P.base(), -n), d, n};
}

std::optional<CompInterval> interval_from_left(const CantorParams& P, const Rational& c) {
    if (c.sign() <= 0 || c >= Rational(1) || !contains(P, c)) return std::nullopt;
    PeriodicReal w = exact::expand(c, P.base());
    if (!w.terminates() || w.frac_preperiod().empty()) return std::nullopt;
    int last = w.frac_preperiod().back();
    if (P.allowed(last)) return std::nullopt;
    int n = static_cast<int>(w.frac_preperiod().size());
    for (const auto& run : P.runs())
        if (run.k == last) return CompInterval{c, c + Rational(run.length()) * rpow(P.base(), -n), n};
    return std::nullopt;
}

std::string format_intervals(const std::vector<CompInterval>& intervals) {
    std::vector<CompInterval> sorted = intervals;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.left < b.left; });
    std::ostringstream os;
    for (const auto& iv : sorted) os << iv.left << ' ' << iv.right << ' ' << iv.depth << '\n';
    return os.str();
}

bool is_length(const CantorParams& P, const Rational& z) {
    if (z.sign() <= 0) return false;
    for (const auto& run : P.runs()) {
        auto e = exact::log_of_power(z / Rational(run.length()), P.base());
        if (e && *e <= -1) return true;
    }
    return false;
}

std::vector<Rational> dprime(const CantorParams& P, int n_max) {
    if (n_max < 1) throw std::domain_error("dprime: n_max must be >= 1");
    std::vector<Rational> out;
    Rational longest_before;  // 0: nothing seen yet
    for (const auto& d : right_endpoints(P, n_max, EndpointMode::cumulative)) {
        Rational len = interval_at(P, d).length();
        if (len > longest_before) {
            out.push_back(d);
            longest_before = len;
        }
    }
    return out;
}

Rational mu_by_definition(const CantorParams& P, int n, const Rational& c) {
    if (n < 1) return Rational(0);
    auto R = right_endpoints(P, n, EndpointMode::cumulative);
    auto it = std::upper_bound(R.begin(), R.end(), c);
    if (it == R.begin()) return Rational(0);
    return *std::prev(it);
}

Rational mu_closed_form(const CantorParams& P, int n, const Rational& c) {
    const int r = P.base();
    Rational best(0);
    for (const auto& w : avoiding_expansions(P, c)) {
        Digits b = frac_digits(w, n);
        for (int p = n; p >= 1; --p) {
            auto g = P.floor_in_M(b[static_cast<std::size_t>(p - 1)]);
            if (!g) continue;
            Rational value;
            for (int i = 1; i < p; ++i) value += Rational(b[static_cast<std::size_t>(i - 1)]) * rpow(r, -i);
            value += Rational(*g) * rpow(r, -p);
            best = std::max(best, value);
            break;
        }
    }
    return best;
}

namespace {

int depth_of(const CantorParams& P, const PowerOfBase& s, int min_depth) {
    if (s.base != P.base() || s.exponent > -min_depth)
        throw std::domain_error("expected " + std::to_string(P.base()) + "^-n with n >= " +
                                std::to_string(min_depth) + ", got " + s.str());
    return static_cast<int>(-s.exponent);
}

}  // namespace

Rational mu(const CantorParams& P, const PowerOfBase& s, const Rational& c) {
    int n = depth_of(P, s, 0);
    if (!contains(P, c)) throw std::domain_error("mu: " + c.str() + " is not in " + P.str());
    Rational a = mu_by_definition(P, n, c);
    Rational b = mu_closed_form(P, n, c);
    if (a != b)
        throw std::logic_error("mu mismatch at " + P.str() + ", n=" + std::to_string(n) + ", c=" + c.str() + ": " +
                               a.str() + " vs " + b.str());
    return a;
}

std::optional<int> digit_via_Z(const CantorParams& P, const Rational& c, const PowerOfBase& s) {
    int n = depth_of(P, s, 1);
    if (!contains(P, c)) throw std::domain_error("digit_via_Z: " + c.str() + " is not in " + P.str());
    const int r = P.base();
    Rational sv = s.value(), rs = sv * Rational(r);
    Rational mu_rs = mu(P, PowerOfBase{r, -(n - 1)}, c);
    Rational mu_s = mu(P, s, c);
    std::optional<int> found;
    for (int i = 0; i < r; ++i) {
        Rational lo = mu_rs + Rational(i) * rs;
        if (!(lo <= mu_s && mu_s < lo + rs)) continue;
        for (int j = 0; j < r; ++j) {
            Rational a = lo + Rational(j) * sv;
            if (a <= c && c < a + sv) {
                if (found && *found != j) throw std::logic_error("Z relates two digits");
                found = j;
            }
        }
    }
    return found;
}

int digit_on_C(const CantorParams& P, const Rational& c, const PowerOfBase& s) {
    int n = depth_of(P, s, 1);
    if (!contains(P, c)) throw std::domain_error("digit_on_C: " + c.str() + " is not in " + P.str());
    if (c == Rational(1)) return 0;
    if (auto iv = interval_from_left(P, c)) {
        if (n > iv->depth) return 0;
        if (n == iv->depth) return run_ending_at(P, exact::expand(iv->right, P.base()).frac_preperiod().back()).k;
        auto d = digit_via_Z(P, iv->right, s);
        if (!d) throw std::logic_error("no Z digit at right endpoint " + iv->right.str());
        return *d;
    }
    auto d = digit_via_Z(P, c, s);
    if (!d) throw std::logic_error("no Z digit for " + c.str() + " at " + s.str());
    return *d;
}

std::vector<Rational> decompose(int r, const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("decompose: x must lie in [0,1]");
    PeriodicReal w = x == Rational(1) ? *exact::dual_expansion(x, r) : exact::expand(x, r);
    std::vector<Rational> out;
    for (int j = 1; j < r; ++j) {
        auto mask = [&](const Digits& ds) {
            Digits o;
            for (int d : ds) o.push_back(d >= j ? r - 1 : 0);
            return o;
        };
        Digits ints(w.integer_digits().size(), 0);
        out.push_back(exact::eval(PeriodicReal(r, 0, ints, mask(w.frac_preperiod()), mask(w.frac_period()))));
    }
    return out;
}

int h_digit(int r, const std::vector<Rational>& c, const PowerOfBase& u) {
    if (u.base != r || u.exponent > -1) throw std::domain_error("h_digit: u must be r^-n with n >= 1");
    int count = 0;
    for (const auto& ci : c) {
        std::optional<PeriodicReal> chosen;
        if (ci.sign() >= 0 && ci <= Rational(1)) {
            for (auto& w : exact::all_expansions(ci, r)) {
                auto only = [r](const Digits& ds) {
                    return std::all_of(ds.begin(), ds.end(), [r](int d) { return d == 0 || d == r - 1; });
                };
                bool int_zero = std::all_of(w.integer_digits().begin(), w.integer_digits().end(),
                                            [](int d) { return d == 0; });
                if (w.sign_digit() == 0 && int_zero && only(w.frac_preperiod()) && only(w.frac_period())) {
                    chosen = w;
                    break;
                }
            }
        }
        if (!chosen) throw std::domain_error("h_digit: " + ci.str() + " has no expansion in digits {0, r-1}");
        if (chosen->digit_at(u.exponent) == r - 1) ++count;
    }
    return count;
}

}  // namespace cantor::cset
