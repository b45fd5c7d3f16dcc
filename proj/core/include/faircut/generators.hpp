#pragma once

#include <cstdint>
#include <string>

#include "faircut/graph.hpp"

namespace faircut {

// Instance families shared by the CLI bench, the benchmarks and the tests.
// Capacities are drawn uniformly from [1, max_capacity]; every family is
// connected and deterministic given the seed.
CapacitatedGraph path_graph(Vertex n, Capacity max_capacity, std::uint64_t seed);
CapacitatedGraph cycle_graph(Vertex n, Capacity max_capacity, std::uint64_t seed);
// Near-square grid with n vertices (last row possibly partial).
CapacitatedGraph grid_graph(Vertex n, Capacity max_capacity, std::uint64_t seed);
// Random spanning tree plus uniformly random extra pairs until m distinct
// edges exist (m is clamped to [n-1, n(n-1)/2]).
CapacitatedGraph random_connected_graph(Vertex n, EdgeId m, Capacity max_capacity, std::uint64_t seed);

// "path", "cycle", "grid" or "random" (m = 3n); throws std::invalid_argument
// otherwise.
CapacitatedGraph family_graph(const std::string& family, Vertex n, Capacity max_capacity,
                              std::uint64_t seed);

}  // namespace faircut
