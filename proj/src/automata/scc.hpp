#pragma once

#include <cstdint>
#include <vector>

namespace cantor::automata::detail {

struct Components {
    std::vector<std::uint32_t> id;      // component of each vertex
    std::vector<std::uint8_t> cyclic;   // per component: contains a cycle
    std::uint32_t count = 0;            // components numbered sinks first
};

/// Iterative Tarjan. `succ[v]` lists successors; vertices with `skip[v]` set
/// (if nonempty) are ignored and get id UINT32_MAX.
Components tarjan(const std::vector<std::vector<std::uint32_t>>& succ, const std::vector<std::uint8_t>& skip = {});

}  // namespace cantor::automata::detail
