#include "cantor/automata/automaton.hpp"

#include "scc.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>

namespace cantor::automata {

namespace {

using StateSet = std::vector<State>;

std::string key_of(const StateSet& S, const StateSet& O) {
    std::string k;
    k.reserve((S.size() + O.size() + 1) * sizeof(State));
    auto put = [&k](State x) { k.append(reinterpret_cast<const char*>(&x), sizeof(State)); };
    for (State x : S) put(x);
    put(UINT32_MAX);
    for (State x : O) put(x);
    return k;
}

void normalize(StateSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

}  // namespace

Automaton determinize(const WeakNba& nba, const std::string& context) {
    const Letter L = letter_count(nba.base, nba.arity);
    // Cache of edges and acceptance per NBA state.
    std::unordered_map<State, std::vector<std::pair<Letter, State>>> edge_cache;
    std::unordered_map<State, bool> acc_cache;
    auto edges_of = [&](State q) -> const std::vector<std::pair<Letter, State>>& {
        auto it = edge_cache.find(q);
        if (it != edge_cache.end()) return it->second;
        std::vector<std::pair<Letter, State>> e;
        nba.edges(q, e);
        return edge_cache.emplace(q, std::move(e)).first->second;
    };
    auto good = [&](State q) {
        auto it = acc_cache.find(q);
        if (it != acc_cache.end()) return it->second;
        bool a = nba.accepting(q);
        acc_cache.emplace(q, a);
        return a;
    };

    std::unordered_map<std::string, State> ids;
    std::vector<std::pair<StateSet, StateSet>> macros;
    auto id_of = [&](StateSet S, StateSet O) {
        auto [it, fresh] = ids.emplace(key_of(S, O), static_cast<State>(macros.size()));
        if (fresh) {
            macros.emplace_back(std::move(S), std::move(O));
            if (macros.size() > state_cap())
                throw ResourceError("state cap of " + std::to_string(state_cap()) + " exceeded while determinizing " +
                                    context);
        }
        return it->second;
    };
    StateSet init = nba.initial;
    normalize(init);
    id_of(init, {});

    std::vector<State> delta;
    std::vector<StateSet> postS(L), postO(L);
    for (std::size_t i = 0; i < macros.size(); ++i) {
        if ((i & 255) == 0) check_deadline();
        for (auto& v : postS) v.clear();
        for (auto& v : postO) v.clear();
        const StateSet S = macros[i].first;
        const StateSet O = macros[i].second;
        for (State q : S)
            for (auto [a, t] : edges_of(q)) postS[a].push_back(t);
        for (State q : O)
            for (auto [a, t] : edges_of(q)) postO[a].push_back(t);
        for (Letter a = 0; a < L; ++a) {
            StateSet nS = std::move(postS[a]);
            normalize(nS);
            StateSet nO;
            const StateSet& from = O.empty() ? nS : (normalize(postO[a]), postO[a]);
            for (State t : from)
                if (good(t)) nO.push_back(t);
            delta.push_back(id_of(std::move(nS), std::move(nO)));
        }
    }
    const State n = static_cast<State>(macros.size());
    // A macro state with empty O is a breakpoint; runs seeing finitely many of
    // them are accepted. Relabel each component: accepting iff it has a cycle
    // and no breakpoint; a component with both a breakpoint and a
    // breakpoint-free cycle makes the language non-weak.
    std::vector<std::vector<State>> succ(n);
    std::vector<std::uint8_t> bad(n);
    for (State q = 0; q < n; ++q) {
        bad[q] = macros[q].second.empty();
        auto& s = succ[q];
        s.assign(delta.begin() + static_cast<long>(q) * L, delta.begin() + static_cast<long>(q + 1) * L);
        normalize(s);
    }
    auto comps = detail::tarjan(succ);
    std::vector<std::uint8_t> comp_bad(comps.count, 0);
    for (State q = 0; q < n; ++q)
        if (bad[q]) comp_bad[comps.id[q]] = 1;
    // good-only subgraph, edges kept inside a component
    std::vector<std::vector<State>> inner(n);
    for (State q = 0; q < n; ++q)
        for (State t : succ[q])
            if (comps.id[t] == comps.id[q]) inner[q].push_back(t);
    auto good_part = detail::tarjan(inner, bad);
    std::vector<std::uint8_t> comp_good_cycle(comps.count, 0);
    for (State q = 0; q < n; ++q)
        if (!bad[q] && good_part.cyclic[good_part.id[q]]) comp_good_cycle[comps.id[q]] = 1;
    std::vector<std::uint8_t> acc(n, 0);
    for (State q = 0; q < n; ++q) {
        auto c = comps.id[q];
        if (comp_bad[c] && comp_good_cycle[c])
            throw NonWeakError(context + " is not weakly recognizable: a strongly connected component of its "
                                         "deterministic automaton has both accepting and rejecting cycles");
        acc[q] = comps.cyclic[c] && !comp_bad[c] ? 1 : 0;
    }
    return minimize(Automaton(nba.base, nba.arity, std::move(delta), std::move(acc), 0));
}

Automaton project(const Automaton& input, int track) {
    if (track < 0 || track >= input.arity()) throw std::invalid_argument("project: track out of range");
    Automaton A = minimize(input);
    const int r = A.base();
    const int k = A.arity();
    const Letter outL = letter_count(r, k - 1);
    std::vector<Letter> proj(A.letters());
    for (Letter a = 0; a + 1 < A.letters(); ++a) {
        auto d = unpack_letter(r, k, a);
        d.erase(d.begin() + track);
        proj[a] = pack_letter(r, d);
    }
    proj[A.star()] = outL - 1;
    // productive: can reach an accepting cycle
    std::vector<std::vector<State>> succ(A.size()), pred(A.size());
    for (State q = 0; q < A.size(); ++q) {
        for (Letter a = 0; a < A.letters(); ++a) succ[q].push_back(A.next(q, a));
        std::sort(succ[q].begin(), succ[q].end());
        succ[q].erase(std::unique(succ[q].begin(), succ[q].end()), succ[q].end());
        for (State t : succ[q]) pred[t].push_back(q);
    }
    auto comps = detail::tarjan(succ);
    std::vector<std::uint8_t> productive(A.size(), 0);
    std::vector<State> queue;
    for (State q = 0; q < A.size(); ++q)
        if (A.accepting(q) && comps.cyclic[comps.id[q]]) {
            productive[q] = 1;
            queue.push_back(q);
        }
    while (!queue.empty()) {
        State q = queue.back();
        queue.pop_back();
        for (State p : pred[q])
            if (!productive[p]) {
                productive[p] = 1;
                queue.push_back(p);
            }
    }
    const State pad = A.size();  // fresh start state absorbing extra sign letters
    // Start letters: b^j for j >= 1 from A's initial state, all j at once.
    std::vector<std::pair<Letter, State>> pad_edges;
    for (Letter b = 0; b + 1 < outL; ++b) {
        auto d = unpack_letter(r, k - 1, b);
        if (!std::all_of(d.begin(), d.end(), [r](int x) { return x == 0 || x == r - 1; })) continue;
        std::set<State> reach;
        std::set<std::vector<State>> seen_layers;
        std::vector<State> layer{A.initial()};
        while (true) {
            std::vector<State> next;
            for (State q : layer)
                for (Letter a = 0; a < A.star(); ++a)
                    if (proj[a] == b) next.push_back(A.next(q, a));
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            if (!seen_layers.insert(next).second) break;
            reach.insert(next.begin(), next.end());
            layer = std::move(next);
        }
        for (State q : reach)
            if (productive[q]) pad_edges.emplace_back(b, q);
    }
    WeakNba nba;
    nba.base = r;
    nba.arity = k - 1;
    nba.initial = {pad};
    nba.accepting = [&A, pad](State q) { return q != pad && A.accepting(q); };
    nba.edges = [&](State q, std::vector<std::pair<Letter, State>>& out) {
        if (q == pad) {
            out = pad_edges;
            return;
        }
        for (Letter a = 0; a < A.letters(); ++a) {
            State t = A.next(q, a);
            if (productive[t]) out.emplace_back(proj[a], t);
        }
    };
    return determinize(nba, "the projection of track " + std::to_string(track));
}

Automaton expand_base(const Automaton& A, int t, int a) {
    long big = 1;
    for (int i = 0; i < a; ++i) big *= t;
    if (a < 1 || big != A.base()) throw std::invalid_argument("expand_base: base mismatch");
    if (a == 1) return A;
    const int k = A.arity();
    const Letter smallL = letter_count(t, k);
    // NBA state: (q, number of pending digits, pending group letter over base t^a)
    struct Key {
        State q;
        int len;
        Letter group;
        auto operator<=>(const Key&) const = default;
    };
    auto registry = std::make_shared<std::map<Key, State>>();
    auto keys = std::make_shared<std::vector<Key>>();
    auto id_of = [registry, keys](Key key) {
        auto [it, fresh] = registry->emplace(key, static_cast<State>(keys->size() + 1));
        if (fresh) keys->push_back(key);
        return it->second;
    };
    // state 0 is the start
    WeakNba nba;
    nba.base = t;
    nba.arity = k;
    nba.initial = {0};
    nba.accepting = [keys, &A](State s) { return s != 0 && A.accepting((*keys)[s - 1].q); };
    nba.edges = [&A, keys, id_of, t, a, k, smallL, big](State s, std::vector<std::pair<Letter, State>>& out) {
        auto merge = [&](Letter group, Letter small) {
            auto g = unpack_letter(static_cast<int>(big), k, group);
            auto d = unpack_letter(t, k, small);
            for (int i = 0; i < k; ++i) g[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)] * t + d[static_cast<std::size_t>(i)];
            return pack_letter(static_cast<int>(big), g);
        };
        if (s == 0) {
            for (Letter b = 0; b + 1 < smallL; ++b) {
                auto d = unpack_letter(t, k, b);
                if (!std::all_of(d.begin(), d.end(), [t](int x) { return x == 0 || x == t - 1; })) continue;
                std::vector<int> sign_big;
                for (int x : d) sign_big.push_back(x == 0 ? 0 : static_cast<int>(big) - 1);
                State q1 = A.next(A.initial(), pack_letter(static_cast<int>(big), sign_big));
                // guess j extra sign digits so the integer length becomes a multiple of a
                Letter pending = 0;
                for (int j = 0; j < a; ++j) {
                    out.emplace_back(b, id_of(Key{q1, j, pending}));
                    pending = merge(pending, b);
                }
            }
            return;
        }
        Key key = (*keys)[s - 1];
        for (Letter b = 0; b + 1 < smallL; ++b) {
            Letter g = merge(key.group, b);
            if (key.len + 1 == a)
                out.emplace_back(b, id_of(Key{A.next(key.q, g), 0, 0}));
            else
                out.emplace_back(b, id_of(Key{key.q, key.len + 1, g}));
        }
        if (key.len == 0) out.emplace_back(smallL - 1, id_of(Key{A.next(key.q, A.star()), 0, 0}));
    };
    return determinize(nba, "the base-" + std::to_string(t) + " reading of a base-" + std::to_string(big) + " relation");
}

}  // namespace cantor::automata
