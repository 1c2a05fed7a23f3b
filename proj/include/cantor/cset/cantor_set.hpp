#pragma once

// Generalized Cantor sets C_{r,K}: the reals in [0,1] with a base-r expansion
// avoiding every digit of K, and the constructions built on their
// complementary intervals (right endpoints, gap lengths, mu, digit recovery).

#include "cantor/exact/expansion.hpp"
#include "cantor/exact/rational.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cantor::cset {

using exact::PowerOfBase;

struct Run {
    int k;  ///< first digit of the run (in K)
    int m;  ///< first digit after the run (not in K)
    int length() const { return m - k; }
    friend bool operator==(const Run&, const Run&) = default;
};

class CantorParams {
public:
    /// Throws std::invalid_argument unless r >= 3 and K is a nonempty subset of {1..r-2}.
    CantorParams(int r, std::set<int> K);

    /// "C[3,{1}]"
    static CantorParams parse(std::string_view text);
    std::string str() const;

    int base() const { return r_; }
    const std::set<int>& excluded() const { return K_; }
    const std::vector<Run>& runs() const { return runs_; }
    const std::vector<int>& M() const { return M_; }
    /// Shortest run length, and the first run (1-based) attaining it.
    int v() const { return v_; }
    int j() const { return j_; }

    bool allowed(int digit) const { return !K_.contains(digit); }
    /// max(M cap (-inf, b]) if nonempty.
    std::optional<int> floor_in_M(int b) const;
    /// Runs whose length exceeds every earlier run (1-based indices); run 1 always.
    std::vector<int> record_runs() const;

    friend bool operator==(const CantorParams& a, const CantorParams& b) {
        return a.r_ == b.r_ && a.K_ == b.K_;
    }

private:
    int r_;
    std::set<int> K_;
    std::vector<Run> runs_;
    std::vector<int> M_;
    int v_ = 0;
    int j_ = 0;
};

CantorParams derive_params(int r, const std::set<int>& K);

/// Expansions of x (integer part zero) whose fractional digits avoid K.
std::vector<exact::PeriodicReal> avoiding_expansions(const CantorParams& P, const Rational& x);

bool contains(const CantorParams& P, const Rational& x);

enum class EndpointMode { exact_depth, cumulative };

/// exact_depth: { sum_{i<=n} b_i r^-i : b_i not in K, b_n in M }.
/// cumulative: union of exact_depth(n') for n' <= n, i.e. right endpoints of
/// complementary intervals of length >= r^-n. Sorted ascending.
std::vector<Rational> right_endpoints(const CantorParams& P, int n, EndpointMode mode);

struct CompInterval {
    Rational left;
    Rational right;
    int depth;
    Rational length() const { return right - left; }
    friend bool operator==(const CompInterval&, const CompInterval&) = default;
};

/// Complementary interval with right endpoint d. Throws std::domain_error if d
/// is not a right endpoint.
CompInterval interval_at(const CantorParams& P, const Rational& d);

/// "left right depth" lines, sorted by left endpoint.
std::string format_intervals(const std::vector<CompInterval>& intervals);

/// z = (m_i - k_i) r^-n for some run i and n >= 1.
bool is_length(const CantorParams& P, const Rational& z);

/// Right endpoints d (depth <= n_max) such that no endpoint e < d has a
/// complementary interval at least as long as d's.
std::vector<Rational> dprime(const CantorParams& P, int n_max);

/// mu(r^-n, c) straight from the definition: max(R_{r^-n} cap (-inf, c]) or 0.
Rational mu_by_definition(const CantorParams& P, int n, const Rational& c);

/// mu(r^-n, c) by the digit formula: for each K-avoiding expansion b of c,
/// prefix(b, p-1) + max(M cap (-inf,b_p]) r^-p at the deepest p <= n where the
/// intersection is nonempty (0 if none); the larger value over the expansions.
Rational mu_closed_form(const CantorParams& P, int n, const Rational& c);

/// Both routes, asserted equal. s must be r^-n with n >= 0; c must lie in C.
Rational mu(const CantorParams& P, const PowerOfBase& s, const Rational& c);

/// The digit d with (c, s, d) in Z, evaluating the Z condition on mu(rs,c),
/// mu(s,c). Empty if no (i, j) satisfies it. s = r^-n, n >= 1.
std::optional<int> digit_via_Z(const CantorParams& P, const Rational& c, const PowerOfBase& s);

/// Canonical digit of c in C at s recovered from complementary-interval data
/// alone: Z where it applies, and the interval (c, d) when c is a left endpoint
/// (then c's canonical digits are d's, except the last one drops to k_j).
int digit_on_C(const CantorParams& P, const Rational& c, const PowerOfBase& s);

/// True if c is the left endpoint of a complementary interval.
std::optional<CompInterval> interval_from_left(const CantorParams& P, const Rational& c);

/// (c_1..c_{r-1}) with c_j = sum_{a_i >= j} (r-1) r^-i over the canonical
/// digits of x (x = 1 uses 0.(r-1)(r-1)...). Sum equals (r-1) x.
std::vector<Rational> decompose(int r, const Rational& x);

/// Number of components whose {0, r-1}-expansion has digit r-1 at u = r^-n.
int h_digit(int r, const std::vector<Rational>& c, const PowerOfBase& u);

}  // namespace cantor::cset
