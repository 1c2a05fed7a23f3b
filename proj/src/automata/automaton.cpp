#include "cantor/automata/automaton.hpp"

#include "cantor/exact/expansion.hpp"
#include "scc.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace cantor::automata {

namespace {

std::size_t g_cap = 2'000'000;
double g_deadline_seconds = 0;
std::chrono::steady_clock::time_point g_start = std::chrono::steady_clock::now();

const char* const kStar = "\xE2\x8B\x86";  // U+22C6

}  // namespace

void set_state_cap(std::size_t cap) { g_cap = cap; }
std::size_t state_cap() { return g_cap; }

void set_deadline_seconds(double seconds) {
    g_deadline_seconds = seconds;
    g_start = std::chrono::steady_clock::now();
}

void check_deadline() {
    if (g_deadline_seconds <= 0) return;
    std::chrono::duration<double> spent = std::chrono::steady_clock::now() - g_start;
    if (spent.count() > g_deadline_seconds)
        throw ResourceError("time limit of " + std::to_string(g_deadline_seconds) + " s exceeded");
}

Letter letter_count(int base, int arity) {
    std::uint64_t n = 1;
    for (int i = 0; i < arity; ++i) {
        n *= static_cast<std::uint64_t>(base);
        if (n > (1u << 24)) throw ResourceError("alphabet too large: base " + std::to_string(base) + ", arity " + std::to_string(arity));
    }
    return static_cast<Letter>(n + 1);
}

Letter pack_letter(int base, const std::vector<int>& digits) {
    Letter a = 0;
    for (std::size_t i = digits.size(); i-- > 0;) a = a * static_cast<Letter>(base) + static_cast<Letter>(digits[i]);
    return a;
}

std::vector<int> unpack_letter(int base, int arity, Letter a) {
    std::vector<int> d(static_cast<std::size_t>(arity));
    for (int i = 0; i < arity; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(a % static_cast<Letter>(base));
        a /= static_cast<Letter>(base);
    }
    return d;
}

std::string letter_str(int base, int arity, Letter a) {
    if (a == letter_count(base, arity) - 1) return kStar;
    if (arity == 0) return "()";
    std::string s;
    auto d = unpack_letter(base, arity, a);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(d[i]);
    }
    return s;
}

Automaton::Automaton(int base, int arity)
    : base_(base), arity_(arity), letters_(letter_count(base, arity)), delta_(letters_, 0), accepting_(1, 0), initial_(0) {
    if (base < 2) throw std::invalid_argument("automaton base must be >= 2");
}

Automaton::Automaton(int base, int arity, std::vector<State> delta, std::vector<std::uint8_t> accepting, State initial)
    : base_(base), arity_(arity), letters_(letter_count(base, arity)), delta_(std::move(delta)),
      accepting_(std::move(accepting)), initial_(initial) {
    if (delta_.size() != static_cast<std::size_t>(letters_) * accepting_.size())
        throw std::invalid_argument("transition table size mismatch");
    if (initial_ >= accepting_.size()) throw std::invalid_argument("initial state out of range");
    for (State q : delta_)
        if (q >= accepting_.size()) throw std::invalid_argument("transition target out of range");
}

Automaton valid_words(int base, int arity) {
    const Letter L = letter_count(base, arity);
    // 0 start, 1 integer part, 2 fraction, 3 sink
    std::vector<State> d(4 * static_cast<std::size_t>(L), 3);
    for (Letter a = 0; a + 1 < L; ++a) {
        auto digits = unpack_letter(base, arity, a);
        bool sign = std::all_of(digits.begin(), digits.end(), [&](int x) { return x == 0 || x == base - 1; });
        d[0 * L + a] = sign ? 1 : 3;
        d[1 * L + a] = 1;
        d[2 * L + a] = 2;
    }
    d[1 * L + (L - 1)] = 2;
    return Automaton(base, arity, std::move(d), {0, 0, 1, 0}, 0);
}

Automaton universal(int base, int arity) { return valid_words(base, arity); }

namespace {

std::vector<std::vector<State>> successor_lists(const Automaton& A) {
    std::vector<std::vector<State>> succ(A.size());
    for (State q = 0; q < A.size(); ++q) {
        auto& s = succ[q];
        for (Letter a = 0; a < A.letters(); ++a) s.push_back(A.next(q, a));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return succ;
}

bool combine(BoolOp op, bool a, bool b) {
    switch (op) {
        case BoolOp::And: return a && b;
        case BoolOp::Or: return a || b;
        case BoolOp::Xor: return a != b;
        case BoolOp::Minus: return a && !b;
    }
    return false;
}

}  // namespace

Automaton product(const Automaton& A, const Automaton& B, BoolOp op) {
    if (A.base() != B.base() || A.arity() != B.arity())
        throw std::invalid_argument("product: alphabet mismatch (base " + std::to_string(A.base()) + "/" +
                                    std::to_string(B.base()) + ", arity " + std::to_string(A.arity()) + "/" +
                                    std::to_string(B.arity()) + ")");
    const Letter L = A.letters();
    std::unordered_map<std::uint64_t, State> ids;
    std::vector<std::pair<State, State>> pairs;
    auto id_of = [&](State p, State q) {
        std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
        auto [it, fresh] = ids.emplace(key, static_cast<State>(pairs.size()));
        if (fresh) {
            pairs.emplace_back(p, q);
            if (pairs.size() > g_cap) throw ResourceError("state cap exceeded in product");
        }
        return it->second;
    };
    id_of(A.initial(), B.initial());
    std::vector<State> delta;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if ((i & 1023) == 0) check_deadline();
        auto [p, q] = pairs[i];
        for (Letter a = 0; a < L; ++a) delta.push_back(id_of(A.next(p, a), B.next(q, a)));
    }
    std::vector<std::uint8_t> acc;
    for (auto [p, q] : pairs) acc.push_back(combine(op, A.accepting(p), B.accepting(q)) ? 1 : 0);
    return Automaton(A.base(), A.arity(), std::move(delta), std::move(acc), 0);
}

Automaton complement(const Automaton& A) {
    auto acc = A.acceptance();
    for (auto& x : acc) x = x ? 0 : 1;
    Automaton flipped(A.base(), A.arity(), A.table(), std::move(acc), A.initial());
    return minimize(product(flipped, valid_words(A.base(), A.arity()), BoolOp::And));
}

Automaton cylindrify(const Automaton& A, int new_arity, const std::vector<int>& where) {
    if (static_cast<int>(where.size()) != A.arity()) throw std::invalid_argument("cylindrify: track map size mismatch");
    for (int w : where)
        if (w < 0 || w >= new_arity) throw std::invalid_argument("cylindrify: track index out of range");
    const int r = A.base();
    const Letter L = letter_count(r, new_arity);
    std::vector<Letter> old(L);
    for (Letter a = 0; a + 1 < L; ++a) {
        auto d = unpack_letter(r, new_arity, a);
        std::vector<int> od;
        for (int w : where) od.push_back(d[static_cast<std::size_t>(w)]);
        old[a] = pack_letter(r, od);
    }
    old[L - 1] = A.star();
    std::vector<State> delta(static_cast<std::size_t>(A.size()) * L);
    for (State q = 0; q < A.size(); ++q)
        for (Letter a = 0; a < L; ++a) delta[static_cast<std::size_t>(q) * L + a] = A.next(q, old[a]);
    Automaton widened(r, new_arity, std::move(delta), A.acceptance(), A.initial());
    return minimize(product(widened, valid_words(r, new_arity), BoolOp::And));
}

Automaton trim_unreachable(const Automaton& A) {
    std::vector<State> id(A.size(), UINT32_MAX), order;
    id[A.initial()] = 0;
    order.push_back(A.initial());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Letter a = 0; a < A.letters(); ++a) {
            State t = A.next(order[i], a);
            if (id[t] == UINT32_MAX) {
                id[t] = static_cast<State>(order.size());
                order.push_back(t);
            }
        }
    std::vector<State> delta;
    std::vector<std::uint8_t> acc;
    for (State q : order) {
        acc.push_back(A.accepting(q));
        for (Letter a = 0; a < A.letters(); ++a) delta.push_back(id[A.next(q, a)]);
    }
    return Automaton(A.base(), A.arity(), std::move(delta), std::move(acc), 0);
}

bool is_weak(const Automaton& A) {
    auto comps = detail::tarjan(successor_lists(A));
    std::vector<int> seen(comps.count, -1);
    for (State q = 0; q < A.size(); ++q) {
        auto c = comps.id[q];
        if (!comps.cyclic[c]) continue;
        int acc = A.accepting(q) ? 1 : 0;
        if (seen[c] == -1)
            seen[c] = acc;
        else if (seen[c] != acc)
            return false;
    }
    return true;
}

Automaton minimize(const Automaton& input) {
    Automaton A = trim_unreachable(input);
    const State n = A.size();
    const Letter L = A.letters();
    auto succ = successor_lists(A);
    auto comps = detail::tarjan(succ);
    // Components come sinks first; give each the least color at least as large
    // as its successors' whose parity matches its acceptance (odd = accepting).
    std::vector<std::vector<State>> members(comps.count);
    for (State q = 0; q < n; ++q) members[comps.id[q]].push_back(q);
    std::vector<std::uint32_t> color(comps.count, 0);
    for (std::uint32_t c = 0; c < comps.count; ++c) {
        std::uint32_t m = 0;
        bool acc = false, mixed = false;
        for (std::size_t i = 0; i < members[c].size(); ++i) {
            State q = members[c][i];
            if (i == 0)
                acc = A.accepting(q);
            else if (A.accepting(q) != acc)
                mixed = true;
            for (State t : succ[q])
                if (comps.id[t] != c) m = std::max(m, color[comps.id[t]]);
        }
        if (!comps.cyclic[c]) {
            color[c] = m;
            continue;
        }
        if (mixed) throw std::logic_error("minimize: automaton is not weak");
        color[c] = (m % 2 == 1) == acc ? m : m + 1;
    }
    // Moore refinement starting from the color partition.
    std::vector<State> cls(n);
    {
        std::map<std::uint32_t, State> by_color;
        for (State q = 0; q < n; ++q) {
            auto col = color[comps.id[q]];
            auto [it, fresh] = by_color.emplace(col, static_cast<State>(by_color.size()));
            cls[q] = it->second;
        }
    }
    std::size_t classes = 0;
    for (State q = 0; q < n; ++q) classes = std::max<std::size_t>(classes, cls[q] + 1);
    while (true) {
        check_deadline();
        auto hash_of = [&](State q) {
            std::uint64_t h = cls[q] * 0x9E3779B97F4A7C15ull;
            for (Letter a = 0; a < L; ++a) h = (h ^ cls[A.next(q, a)]) * 0x100000001B3ull;
            return h;
        };
        auto same = [&](State p, State q) {
            if (cls[p] != cls[q]) return false;
            for (Letter a = 0; a < L; ++a)
                if (cls[A.next(p, a)] != cls[A.next(q, a)]) return false;
            return true;
        };
        std::unordered_map<std::uint64_t, std::vector<State>> buckets;
        std::vector<State> next_cls(n);
        std::size_t count = 0;
        for (State q = 0; q < n; ++q) {
            auto& reps = buckets[hash_of(q)];
            bool found = false;
            for (State r : reps)
                if (same(q, r)) {
                    next_cls[q] = next_cls[r];
                    found = true;
                    break;
                }
            if (!found) {
                next_cls[q] = static_cast<State>(count++);
                reps.push_back(q);
            }
        }
        bool stable = count == classes;
        classes = count;
        cls.swap(next_cls);
        if (stable) break;
    }
    // Renumber so the initial state is 0 and order follows discovery.
    std::vector<State> rep(classes, UINT32_MAX);
    for (State q = 0; q < n; ++q)
        if (rep[cls[q]] == UINT32_MAX) rep[cls[q]] = q;
    std::vector<State> delta(classes * L);
    std::vector<std::uint8_t> acc(classes);
    for (State c = 0; c < classes; ++c) {
        State q = rep[c];
        acc[c] = color[comps.id[q]] % 2 == 1 ? 1 : 0;
        for (Letter a = 0; a < L; ++a) delta[static_cast<std::size_t>(c) * L + a] = cls[A.next(q, a)];
    }
    return trim_unreachable(Automaton(A.base(), A.arity(), std::move(delta), std::move(acc), cls[A.initial()]));
}

std::optional<Lasso> find_witness(const Automaton& A) {
    auto succ = successor_lists(A);
    auto comps = detail::tarjan(succ);
    // BFS tree from the initial state
    const State n = A.size();
    std::vector<State> parent(n, UINT32_MAX);
    std::vector<Letter> via(n, 0);
    std::vector<State> order{A.initial()};
    parent[A.initial()] = A.initial();
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Letter a = 0; a < A.letters(); ++a) {
            State t = A.next(order[i], a);
            if (parent[t] == UINT32_MAX) {
                parent[t] = order[i];
                via[t] = a;
                order.push_back(t);
            }
        }
    for (State q : order) {
        if (!A.accepting(q) || !comps.cyclic[comps.id[q]]) continue;
        Lasso w;
        for (State s = q; s != A.initial(); s = parent[s]) w.stem.push_back(via[s]);
        std::reverse(w.stem.begin(), w.stem.end());
        // shortest cycle back to q inside its component
        std::unordered_map<State, std::pair<State, Letter>> back;
        std::deque<State> queue{q};
        bool closed = false;
        State last = q;
        Letter last_letter = 0;
        while (!queue.empty() && !closed) {
            State s = queue.front();
            queue.pop_front();
            for (Letter a = 0; a < A.letters() && !closed; ++a) {
                State t = A.next(s, a);
                if (comps.id[t] != comps.id[q]) continue;
                if (t == q) {
                    closed = true;
                    last = s;
                    last_letter = a;
                } else if (!back.contains(t)) {
                    back[t] = {s, a};
                    queue.push_back(t);
                }
            }
        }
        w.loop.push_back(last_letter);
        for (State s = last; s != q; s = back[s].first) w.loop.push_back(back[s].second);
        std::reverse(w.loop.begin(), w.loop.end());
        return w;
    }
    return std::nullopt;
}

bool equivalent(const Automaton& A, const Automaton& B) { return is_empty(product(A, B, BoolOp::Xor)); }

bool accepts_encoding(const Automaton& A, const Lasso& w) {
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    for (Letter a : w.stem)
        if (a >= A.letters()) throw std::invalid_argument("letter out of range");
    for (Letter a : w.loop)
        if (a >= A.letters()) throw std::invalid_argument("letter out of range");
    State q = A.initial();
    for (Letter a : w.stem) q = A.next(q, a);
    std::unordered_map<State, std::size_t> seen;
    std::vector<bool> round_accepts;
    while (!seen.contains(q)) {
        seen[q] = round_accepts.size();
        bool acc = false;
        for (Letter a : w.loop) {
            acc = acc || A.accepting(q);
            q = A.next(q, a);
        }
        round_accepts.push_back(acc);
    }
    for (std::size_t i = seen[q]; i < round_accepts.size(); ++i)
        if (round_accepts[i]) return true;
    return false;
}

Lasso encode(int base, const std::vector<Rational>& v, int extra_padding) {
    std::vector<exact::PeriodicReal> ex;
    for (const auto& x : v) ex.push_back(exact::expand(x, base));
    return encode_words(base, ex, extra_padding);
}

Lasso encode_words(int base, const std::vector<exact::PeriodicReal>& ex, int extra_padding) {
    const int k = static_cast<int>(ex.size());
    const Letter star = letter_count(base, k) - 1;
    Lasso w;
    if (k == 0) {
        w.stem = {0, star};
        w.loop = {0};
        return w;
    }
    long p = 0;
    std::size_t pre = 0, per = 1;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        p = std::max(p, ex[i].int_length());
        pre = std::max(pre, ex[i].frac_preperiod().size());
        per = std::lcm(per, ex[i].frac_period().size());
    }
    p += extra_padding;
    auto column = [&](long pos) {
        std::vector<int> d;
        for (auto& e : ex) d.push_back(e.digit_at(pos));
        return pack_letter(base, d);
    };
    w.stem.push_back(column(p));
    for (long pos = p - 1; pos >= 0; --pos) w.stem.push_back(column(pos));
    w.stem.push_back(star);
    for (long i = 1; i <= static_cast<long>(pre); ++i) w.stem.push_back(column(-i));
    for (long i = 1; i <= static_cast<long>(per); ++i) w.loop.push_back(column(-static_cast<long>(pre) - i));
    return w;
}

std::vector<Rational> decode(int base, int arity, const Lasso& w) {
    const Letter star = letter_count(base, arity) - 1;
    auto stars = std::count(w.stem.begin(), w.stem.end(), star);
    if (stars != 1 || std::count(w.loop.begin(), w.loop.end(), star) != 0 || w.loop.empty() || w.stem.empty() ||
        w.stem.front() == star)
        throw std::invalid_argument("malformed encoding: need sign letter, one separator in the stem, nonempty loop");
    std::vector<Rational> out;
    for (int t = 0; t < arity; ++t) {
        auto digit = [&](Letter a) { return unpack_letter(base, arity, a)[static_cast<std::size_t>(t)]; };
        int sign = digit(w.stem.front());
        if (sign != 0 && sign != base - 1) throw std::invalid_argument("malformed encoding: bad sign digit");
        exact::Digits ints, pre, per;
        std::size_t i = 1;
        for (; w.stem[i] != star; ++i) ints.push_back(digit(w.stem[i]));
        for (++i; i < w.stem.size(); ++i) pre.push_back(digit(w.stem[i]));
        for (Letter a : w.loop) per.push_back(digit(a));
        out.push_back(exact::eval(exact::PeriodicReal(base, sign, ints, pre, per)));
    }
    return out;
}

bool accepts_real(const Automaton& A, const std::vector<Rational>& v) {
    if (static_cast<int>(v.size()) != A.arity()) throw std::invalid_argument("accepts_real: dimension mismatch");
    return accepts_encoding(A, encode(A.base(), v));
}

std::string lasso_str(int base, int arity, const Lasso& w) {
    const bool compact = arity == 1 && base <= 10;
    std::string s;
    auto put = [&](Letter a, bool first) {
        if (!compact && !first) s += ' ';
        s += letter_str(base, arity, a);
    };
    for (std::size_t i = 0; i < w.stem.size(); ++i) put(w.stem[i], i == 0);
    if (!compact && !w.stem.empty()) s += ' ';
    s += '(';
    for (std::size_t i = 0; i < w.loop.size(); ++i) put(w.loop[i], i == 0);
    s += ')';
    return s;
}

Lasso parse_lasso(int base, int arity, const std::string& text) {
    const Letter star = letter_count(base, arity) - 1;
    std::string t = text;
    for (std::size_t pos; (pos = t.find(kStar)) != std::string::npos;) t.replace(pos, 3, "*");
    if (arity == 0)
        for (std::size_t pos; (pos = t.find("()")) != std::string::npos;) t.replace(pos, 2, "@");
    for (std::size_t pos = 0; pos < t.size(); ++pos)
        if (t[pos] == '*') {
            t.replace(pos, 1, " * ");
            pos += 2;
        }
    for (std::size_t pos = 0; pos < t.size(); ++pos)
        if (t[pos] == '(' || t[pos] == ')') {
            t.insert(pos + 1, " ");
            t.insert(pos, " ");
            pos += 2;
        }
    std::vector<std::string> tokens;
    {
        std::istringstream in(t);
        std::string tok;
        while (in >> tok) tokens.push_back(tok);
    }
    Lasso w;
    bool in_loop = false, closed = false;
    auto add = [&](Letter a) { (in_loop ? w.loop : w.stem).push_back(a); };
    auto bad = [&]() { throw std::invalid_argument("malformed lasso '" + text + "'"); };
    for (auto& tok : tokens) {
        if (closed) bad();
        if (tok == "(") {
            if (in_loop) bad();
            in_loop = true;
        } else if (tok == ")") {
            if (!in_loop) bad();
            closed = true;
        } else if (tok == "*") {
            add(star);
        } else if (tok == "@") {
            add(0);
        } else if (arity == 1 && tok.find(',') == std::string::npos && base <= 10) {
            for (char c : tok) {
                if (c < '0' || c - '0' >= base) bad();
                add(static_cast<Letter>(c - '0'));
            }
        } else {
            std::vector<int> d;
            std::istringstream parts(tok);
            std::string item;
            while (std::getline(parts, item, ',')) {
                try {
                    d.push_back(std::stoi(item));
                } catch (...) {
                    bad();
                }
                if (d.back() < 0 || d.back() >= base) bad();
            }
            if (static_cast<int>(d.size()) != arity) bad();
            add(pack_letter(base, d));
        }
    }
    if (!closed || w.loop.empty()) bad();
    return w;
}

std::string to_text(const Automaton& A) {
    std::ostringstream os;
    os << "rva base=" << A.base() << " arity=" << A.arity() << " states=" << A.size() << " initial=" << A.initial()
       << '\n';
    for (State q = 0; q < A.size(); ++q)
        for (Letter a = 0; a < A.letters(); ++a)
            os << q << ' ' << letter_str(A.base(), A.arity(), a) << ' ' << A.next(q, a) << '\n';
    os << "accepting:";
    for (State q = 0; q < A.size(); ++q)
        if (A.accepting(q)) os << ' ' << q;
    os << '\n';
    return os.str();
}

Automaton from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto bad = [](const std::string& why) -> Automaton { throw std::invalid_argument("bad automaton text: " + why); };
    if (!std::getline(in, line)) return bad("empty input");
    int base = 0, arity = -1;
    long states = -1, initial = -1;
    {
        std::istringstream h(line);
        std::string tag;
        h >> tag;
        if (tag != "rva") return bad("missing header");
        std::string kv;
        while (h >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) return bad("header field " + kv);
            std::string key = kv.substr(0, eq);
            long val = std::stol(kv.substr(eq + 1));
            if (key == "base") base = static_cast<int>(val);
            else if (key == "arity") arity = static_cast<int>(val);
            else if (key == "states") states = val;
            else if (key == "initial") initial = val;
        }
    }
    if (base < 2 || arity < 0 || states <= 0 || initial < 0) return bad("incomplete header");
    const Letter L = letter_count(base, arity);
    std::vector<State> delta(static_cast<std::size_t>(states) * L, UINT32_MAX);
    std::vector<std::uint8_t> acc(static_cast<std::size_t>(states), 0);
    std::map<std::string, Letter> names;
    for (Letter a = 0; a < L; ++a) names[letter_str(base, arity, a)] = a;
    names["*"] = L - 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("accepting:", 0) == 0) {
            std::istringstream a(line.substr(10));
            long q;
            while (a >> q) {
                if (q < 0 || q >= states) return bad("accepting state out of range");
                acc[static_cast<std::size_t>(q)] = 1;
            }
            continue;
        }
        std::istringstream t(line);
        long q, nxt;
        std::string letter;
        if (!(t >> q >> letter >> nxt) || q < 0 || q >= states || nxt < 0 || nxt >= states || !names.contains(letter))
            return bad("transition line '" + line + "'");
        delta[static_cast<std::size_t>(q) * L + names[letter]] = static_cast<State>(nxt);
    }
    for (State x : delta)
        if (x == UINT32_MAX) return bad("missing transitions (automaton must be complete)");
    return Automaton(base, arity, std::move(delta), std::move(acc), static_cast<State>(initial));
}

std::string to_dot(const Automaton& A) {
    std::ostringstream os;
    os << "digraph rva {\n  rankdir=LR;\n  init [shape=point];\n";
    for (State q = 0; q < A.size(); ++q)
        os << "  q" << q << " [shape=" << (A.accepting(q) ? "doublecircle" : "circle") << "];\n";
    os << "  init -> q" << A.initial() << ";\n";
    for (State q = 0; q < A.size(); ++q) {
        std::map<State, std::vector<Letter>> by_target;
        for (Letter a = 0; a < A.letters(); ++a) by_target[A.next(q, a)].push_back(a);
        for (auto& [t, ls] : by_target) {
            std::string label;
            for (std::size_t i = 0; i < ls.size() && i < 6; ++i) {
                if (i) label += ' ';
                label += letter_str(A.base(), A.arity(), ls[i]);
            }
            if (ls.size() > 6) label += " +" + std::to_string(ls.size() - 6);
            os << "  q" << q << " -> q" << t << " [label=\"" << label << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace cantor::automata
