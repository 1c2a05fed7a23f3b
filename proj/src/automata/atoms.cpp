#include "cantor/automata/atoms.hpp"

#include <array>
#include <map>
#include <numeric>

namespace cantor::automata {

namespace {

using Key = std::array<long, 6>;

// Breadth-first construction of a deterministic automaton from a step
// function; a missing successor goes to the rejecting sink.
template <class Step, class Accept>
Automaton explore(int base, int arity, Key start, Step step, Accept accept) {
    const Letter L = letter_count(base, arity);
    std::map<Key, State> ids;
    std::vector<Key> keys;
    // state 0 is the sink
    keys.push_back(Key{-1, -1, -1, -1, -1, -1});
    auto id_of = [&](const Key& k) {
        auto [it, fresh] = ids.emplace(k, static_cast<State>(keys.size()));
        if (fresh) {
            keys.push_back(k);
            if (keys.size() > state_cap()) throw ResourceError("state cap exceeded building an atom");
        }
        return it->second;
    };
    State init = id_of(start);
    std::vector<State> delta(L, 0);
    std::vector<std::uint8_t> acc{0};
    for (std::size_t i = 1; i < keys.size(); ++i) {
        Key k = keys[i];
        acc.push_back(accept(k) ? 1 : 0);
        for (Letter a = 0; a < L; ++a) {
            std::optional<Key> t = step(k, a);
            delta.push_back(t ? id_of(*t) : 0);
        }
    }
    return minimize(Automaton(base, arity, std::move(delta), std::move(acc), init));
}

// Small explicit weak NBA over one track.
struct ExplicitNba {
    int base;
    int arity;
    std::vector<std::vector<std::pair<Letter, State>>> out;
    std::vector<std::uint8_t> acc;

    State add(bool accepting) {
        out.emplace_back();
        acc.push_back(accepting ? 1 : 0);
        return static_cast<State>(out.size() - 1);
    }
    void edge(State p, Letter a, State q) { out[p].emplace_back(a, q); }

    Automaton build(const std::string& name) const {
        WeakNba nba;
        nba.base = base;
        nba.arity = arity;
        nba.initial = {0};
        auto self = *this;
        nba.accepting = [self](State q) { return self.acc[q] != 0; };
        nba.edges = [self](State q, std::vector<std::pair<Letter, State>>& e) { e = self.out[q]; };
        return determinize(nba, name);
    }
};

}  // namespace

Automaton linear(int base, const std::vector<Rational>& coeffs, Rel rel, const Rational& rhs) {
    const int k = static_cast<int>(coeffs.size());
    BigInt den = rhs.denominator();
    for (const auto& c : coeffs) den = lcm(den, c.denominator());
    auto as_long = [&](const Rational& q) {
        Rational s = q * Rational(den);
        if (!s.numerator().fits_slong_p()) throw ResourceError("coefficient too large");
        return s.numerator().get_si();
    };
    std::vector<long> a;
    for (const auto& c : coeffs) a.push_back(as_long(c));
    const long b = as_long(rhs);
    long Aplus = 0, Aminus = 0;
    for (long c : a) (c > 0 ? Aplus : Aminus) += c;
    const long bound = std::labs(b);
    const Letter L = letter_count(base, k);
    std::vector<long> dot(L, 0), sign_val(L, 0);
    std::vector<std::uint8_t> is_sign(L, 0);
    for (Letter l = 0; l + 1 < L; ++l) {
        auto d = unpack_letter(base, k, l);
        bool sign = true;
        for (int i = 0; i < k; ++i) {
            dot[l] += a[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
            if (d[static_cast<std::size_t>(i)] == base - 1)
                sign_val[l] -= a[static_cast<std::size_t>(i)];
            else if (d[static_cast<std::size_t>(i)] != 0)
                sign = false;
        }
        is_sign[l] = sign;
    }
    if (k == 0) is_sign[0] = 1;
    // key[0]: 0 start, 1 integer part, 2 fraction, 3 decided true in the
    // integer part, 4 decided true in the fraction. key[1]: running value.
    auto classify_int = [&](long g) -> std::optional<Key> {
        if (g + Aminus > bound) return std::nullopt;
        if (g + Aplus < -bound) {
            if (rel == Rel::Eq) return std::nullopt;
            return Key{3, 0, 0, 0, 0, 0};
        }
        return Key{1, g, 0, 0, 0, 0};
    };
    auto classify_frac = [&](long e) -> std::optional<Key> {
        if (rel == Rel::Eq) {
            if (e < -Aplus || e > -Aminus) return std::nullopt;
            return Key{2, e, 0, 0, 0, 0};
        }
        if (e + Aplus < 0) return Key{4, 0, 0, 0, 0, 0};
        if (e + Aminus >= 0) return std::nullopt;
        return Key{2, e, 0, 0, 0, 0};
    };
    const Letter star = L - 1;
    auto step = [&](const Key& key, Letter l) -> std::optional<Key> {
        switch (key[0]) {
            case 0:
                if (l == star || !is_sign[l]) return std::nullopt;
                return classify_int(sign_val[l]);
            case 1:
                if (l == star) return classify_frac(key[1] - b);
                return classify_int(base * key[1] + dot[l]);
            case 2:
                if (l == star) return std::nullopt;
                return classify_frac(base * key[1] + dot[l]);
            case 3:
                return l == star ? Key{4, 0, 0, 0, 0, 0} : key;
            default:
                if (l == star) return std::nullopt;
                return key;
        }
    };
    auto accept = [&](const Key& key) { return rel == Rel::Eq ? key[0] == 2 : key[0] == 4; };
    return explore(base, k, Key{0, 0, 0, 0, 0, 0}, step, accept);
}

Automaton atom_equal(int base) { return linear(base, {Rational(1), Rational(-1)}, Rel::Eq, Rational(0)); }
Automaton atom_sum(int base) {
    return linear(base, {Rational(1), Rational(1), Rational(-1)}, Rel::Eq, Rational(0));
}
Automaton atom_less(int base) { return linear(base, {Rational(1), Rational(-1)}, Rel::Less, Rational(0)); }
Automaton atom_const(int base, const Rational& q) { return linear(base, {Rational(1)}, Rel::Eq, q); }

Automaton atom_int(int base) {
    ExplicitNba n{base, 1, {}, {}};
    const Letter star = static_cast<Letter>(base);
    State s = n.add(false), ip = n.add(false), zeros = n.add(true), tops = n.add(true);
    n.edge(s, 0, ip);
    n.edge(s, static_cast<Letter>(base - 1), ip);
    for (Letter d = 0; d < star; ++d) n.edge(ip, d, ip);
    n.edge(ip, star, zeros);
    n.edge(ip, star, tops);
    n.edge(zeros, 0, zeros);
    n.edge(tops, static_cast<Letter>(base - 1), tops);
    return n.build("Int");
}

namespace {

// Powers of the base: 1 0^j * 0^w, 0^j (r-1)^m * (r-1)^w, * 0^j 1 0^w, * 0^j (r-1)^w.
Automaton powers(int base, bool negative_only) {
    ExplicitNba n{base, 1, {}, {}};
    const Letter star = static_cast<Letter>(base), top = static_cast<Letter>(base - 1);
    State s = n.add(false), lead = n.add(false), one = n.add(false), tops = n.add(false), frac = n.add(false),
          zeros = n.add(true), tail = n.add(true);
    n.edge(s, 0, lead);
    n.edge(lead, 0, lead);
    n.edge(lead, 1, one);
    n.edge(lead, star, frac);
    if (!negative_only) {
        n.edge(one, 0, one);
        n.edge(lead, top, tops);
        n.edge(tops, top, tops);
        n.edge(tops, star, tail);
    }
    n.edge(one, star, zeros);
    n.edge(frac, 0, frac);
    n.edge(frac, 1, zeros);
    n.edge(frac, top, tail);
    n.edge(zeros, 0, zeros);
    n.edge(tail, top, tail);
    return n.build(negative_only ? "InvPow" : "Pow");
}

}  // namespace

Automaton atom_inv_pow(int base) { return powers(base, true); }
Automaton atom_pow(int base) { return powers(base, false); }

Automaton atom_cantor(const cset::CantorParams& P) {
    const int r = P.base();
    ExplicitNba n{r, 1, {}, {}};
    const Letter star = static_cast<Letter>(r);
    State s = n.add(false), ip = n.add(false), frac = n.add(true);
    n.edge(s, 0, ip);
    n.edge(ip, 0, ip);
    n.edge(ip, star, frac);
    for (int d = 0; d < r; ++d)
        if (P.allowed(d)) n.edge(frac, static_cast<Letter>(d), frac);
    return saturate(n.build(P.str()), 0);
}

namespace {

// Word-level digit relation on tracks (x, u, k). Key: phase, k state, u state
// (0 unseen, 1 + x digit at u), x all r-1 so far, x has a digit != r-1 after u.
Automaton digit_words(int base, bool canonical) {
    const int r = base;
    const Letter star = letter_count(r, 3) - 1;
    auto step = [=](const Key& key, Letter l) -> std::optional<Key> {
        Key n = key;
        if (key[0] == 0) {
            if (l == star) return std::nullopt;
            auto d = unpack_letter(r, 3, l);
            if ((d[0] != 0 && d[0] != r - 1) || d[1] != 0 || d[2] != 0) return std::nullopt;
            return Key{1, 0, 0, d[0] == r - 1 ? 1 : 0, 0, 0};
        }
        if (l == star) {
            if (key[0] != 1) return std::nullopt;
            n[0] = 2;
            return n;
        }
        auto d = unpack_letter(r, 3, l);
        if (key[0] == 1) {
            if (key[1] != 0) return std::nullopt;  // k's nonzero digit must be the last integer digit
            n[1] = d[2];
        } else if (d[2] != 0) {
            return std::nullopt;
        }
        if (key[2] != 0 && d[0] != r - 1) n[4] = 1;
        if (d[1] == 1) {
            if (key[2] != 0) return std::nullopt;
            n[2] = 1 + d[0];
        } else if (d[1] != 0) {
            return std::nullopt;
        }
        if (d[0] != r - 1) n[3] = 0;
        return n;
    };
    auto accept = [=](const Key& key) {
        return key[0] == 2 && key[2] != 0 && key[2] - 1 == key[1] && key[3] == 0 && (!canonical || key[4] == 1);
    };
    return explore(r, 3, Key{0, 0, 0, 0, 0, 0}, step, accept);
}

}  // namespace

Automaton atom_V(int base) { return saturate_all(digit_words(base, false)); }
Automaton atom_U(int base) { return saturate_all(digit_words(base, true)); }

Automaton atom_W(int base) {
    Automaton V = atom_V(base);
    Automaton nonneg = complement(linear(base, {Rational(1)}, Rel::Less, Rational(0)));
    Automaton at_most_one = complement(linear(base, {Rational(-1)}, Rel::Less, Rational(-1)));
    Automaton box = product(nonneg, at_most_one, BoolOp::And);
    Automaton W = product(V, cylindrify(box, 3, {0}), BoolOp::And);
    W = product(W, cylindrify(atom_inv_pow(base), 3, {1}), BoolOp::And);
    return minimize(W);
}

Automaton atom_dfin(int base) {
    // d in [0,1) and exists v > 0 with W(d,u,0) for every u in r^-N below v.
    Automaton W = atom_W(base);
    Automaton W0 = project(product(cylindrify(W, 3, {0, 1, 2}),
                                   cylindrify(atom_const(base, Rational(0)), 3, {2}), BoolOp::And),
                           2);  // (d, u)
    // tracks (d, u, v)
    Automaton bad_u = product(cylindrify(atom_inv_pow(base), 3, {1}), cylindrify(atom_less(base), 3, {1, 2}),
                              BoolOp::And);
    bad_u = product(bad_u, complement(cylindrify(W0, 3, {0, 1})), BoolOp::And);
    Automaton all_good = complement(project(bad_u, 1));  // (d, v)
    Automaton vpos = cylindrify(linear(base, {Rational(-1)}, Rel::Less, Rational(0)), 2, {1});
    Automaton inner = product(all_good, vpos, BoolOp::And);
    Automaton unit = product(complement(linear(base, {Rational(1)}, Rel::Less, Rational(0))),
                             linear(base, {Rational(1)}, Rel::Less, Rational(1)), BoolOp::And);
    return minimize(product(project(inner, 1), unit, BoolOp::And));
}

Automaton saturate(const Automaton& A, int track) {
    const int k = A.arity();
    std::vector<int> where(static_cast<std::size_t>(k));
    std::iota(where.begin(), where.end(), 0);
    where[static_cast<std::size_t>(track)] = k;
    Automaton moved = cylindrify(A, k + 1, where);
    Automaton eq = cylindrify(atom_equal(A.base()), k + 1, {track, k});
    return project(product(moved, eq, BoolOp::And), k);
}

Automaton saturate_all(const Automaton& A) {
    Automaton out = A;
    for (int t = 0; t < A.arity(); ++t) out = saturate(out, t);
    return out;
}

}  // namespace cantor::automata
