#include "scc.hpp"

#include <algorithm>
#include <limits>

namespace cantor::automata::detail {

Components tarjan(const std::vector<std::vector<std::uint32_t>>& succ, const std::vector<std::uint8_t>& skip) {
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
    const std::uint32_t n = static_cast<std::uint32_t>(succ.size());
    auto skipped = [&](std::uint32_t v) { return !skip.empty() && skip[v]; };
    Components out;
    out.id.assign(n, none);
    std::vector<std::uint32_t> index(n, none), low(n, 0), stack;
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> work;
    std::uint32_t counter = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != none || skipped(root)) continue;
        work.push_back({root, 0});
        while (!work.empty()) {
            auto& [v, i] = work.back();
            if (i == 0 && index[v] == none) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (i < succ[v].size()) {
                std::uint32_t w = succ[v][i++];
                if (skipped(w)) continue;
                if (index[w] == none) {
                    work.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            std::uint32_t vv = v;
            if (low[vv] == index[vv]) {
                std::uint32_t c = out.count++;
                std::uint32_t w;
                std::size_t members = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    out.id[w] = c;
                    ++members;
                } while (w != vv);
                bool cyc = members > 1;
                if (!cyc)
                    for (auto x : succ[vv])
                        if (x == vv) cyc = true;
                out.cyclic.push_back(cyc ? 1 : 0);
            }
            work.pop_back();
            if (!work.empty()) {
                std::uint32_t parent = work.back().first;
                low[parent] = std::min(low[parent], low[vv]);
            }
        }
    }
    return out;
}

}  // namespace cantor::automata::detail
