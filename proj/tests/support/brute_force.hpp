#pragma once

// Exhaustive reference computations, independent of the library's flow code.
// Only usable for small vertex counts (2^n subsets).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "faircut/cut.hpp"
#include "faircut/flow.hpp"
#include "faircut/graph.hpp"
#include "faircut/random.hpp"

namespace faircut::testing {

inline VertexSet subset_from_mask(Vertex n, std::uint32_t mask) {
  VertexSet side(n, 0);
  for (Vertex v = 0; v < n; ++v) side[v] = (mask >> v) & 1U;
  return side;
}

// Directed boundary recomputed straight from the arc list.
inline double brute_directed_cut(const ArcCapacityView& view, const VertexSet& side) {
  const CapacitatedGraph& g = view.graph();
  double total = 0.0;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (side[g.tail(a)] && !side[g.head(a)]) total += view.capacity(a);
  }
  return total;
}

inline double brute_undirected_cut(const CapacitatedGraph& g, const VertexSet& side) {
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    if (side[e.u] != side[e.v]) total += static_cast<double>(e.capacity);
  }
  return total;
}

// min over S with s in S, t not in S of the directed boundary.
inline double brute_min_cut(const ArcCapacityView& view, Vertex s, Vertex t) {
  const Vertex n = view.graph().vertex_count();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (!((mask >> s) & 1U) || ((mask >> t) & 1U)) continue;
    best = std::min(best, brute_directed_cut(view, subset_from_mask(n, mask)));
  }
  return best;
}

// max over proper S of d(S) / c(boundary S): the single-commodity optimum
// congestion by the cut condition.
inline double brute_opt(const CapacitatedGraph& g, const Demand& d) {
  const Vertex n = g.vertex_count();
  double best = 0.0;
  for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
    const VertexSet side = subset_from_mask(n, mask);
    double inside = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      if (side[v]) inside += d[v];
    }
    const double boundary = brute_undirected_cut(g, side);
    if (boundary > 0.0) best = std::max(best, std::abs(inside) / boundary);
  }
  return best;
}

inline Demand random_demand(Rng& rng, Vertex n, int support) {
  Demand d(n);
  std::vector<Vertex> picked;
  while (static_cast<int>(picked.size()) < std::min<int>(support, n)) {
    const auto v = static_cast<Vertex>(rng.uniform_int(0, n - 1));
    if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < picked.size(); ++i) {
    d[picked[i]] = static_cast<double>(rng.uniform_int(-20, 20));
    total += d[picked[i]];
  }
  d[picked.back()] = -total;
  return d;
}

// Random nonnegative arc amounts, each at most half the capacity, so both
// directions together stay feasible.
inline FlowAssignment random_half_flow(Rng& rng, const CapacitatedGraph& g) {
  std::vector<double> amounts(g.arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    amounts[a] = rng.unit() * 0.5 * static_cast<double>(g.capacity(a));
  }
  return FlowAssignment(std::move(amounts));
}

}  // namespace faircut::testing
