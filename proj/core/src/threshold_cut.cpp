#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "faircut/errors.hpp"
#include "faircut/flow_or_cut.hpp"

namespace faircut {
namespace {

std::vector<Vertex> sweep_order(std::span<const double> phi) {
  std::vector<Vertex> order(phi.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return phi[a] > phi[b]; });
  return order;
}

// Incremental prefix state: adding v moves its arcs into or out of the boundary.
struct Sweep {
  Sweep(const ArcCapacityView& view) : view(view), inside(view.graph().vertex_count(), 0) {}

  void add(Vertex v, double demand) {
    const CapacitatedGraph& g = view.graph();
    inside[v] = 1;
    delta += demand;
    for (const Incidence& inc : g.incident(v)) {
      if (inside[inc.neighbor]) {
        capacity -= view.capacity(reverse_arc(inc.out_arc));
      } else {
        capacity += view.capacity(inc.out_arc);
      }
    }
  }

  const ArcCapacityView& view;
  VertexSet inside;
  double delta = 0.0;
  double capacity = 0.0;
};

double set_demand(const Demand& d, const VertexSet& side) {
  double total = 0.0;
  for (Vertex v = 0; v < d.size(); ++v) {
    if (side[v]) total += d[v];
  }
  return total;
}

}  // namespace

double threshold_precondition(const ArcCapacityView& view, std::span<const double> phi,
                              const Demand& d) {
  const CapacitatedGraph& g = view.graph();
  double value = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) value += phi[v] * d[v];
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const double drop = phi[g.tail(a)] - phi[g.head(a)];
    if (drop > 0.0) value -= view.capacity(a) * drop;
  }
  return value;
}

ThresholdCut threshold_cut(const ArcCapacityView& view, std::span<const double> phi, const Demand& d) {
  const CapacitatedGraph& g = view.graph();
  const Vertex n = g.vertex_count();
  if (static_cast<Vertex>(phi.size()) != n || d.size() != n) {
    throw std::invalid_argument("potential and demand must cover every vertex");
  }
  const double value = threshold_precondition(view, phi, d);
  double scale = 0.0;
  for (Vertex v = 0; v < n; ++v) scale += std::abs(phi[v] * d[v]);
  if (!(value > 1e-12 * scale) || !(value > 0.0)) {
    throw PreconditionViolation("threshold cut precondition phi^T(d - A f_phi) > 0 fails");
  }

  Sweep sweep(view);
  const auto order = sweep_order(phi);
  for (Vertex i = 0; i + 1 < n; ++i) {
    sweep.add(order[i], d[order[i]]);
    if (sweep.delta <= sweep.capacity) continue;
    // Confirm from scratch so rounding in the running sums cannot fake a hit.
    const double delta = set_demand(d, sweep.inside);
    const double capacity = directed_cut_value(view, sweep.inside);
    if (delta > capacity) return {sweep.inside, delta, capacity};
  }
  throw PreconditionViolation("threshold sweep found no prefix violating the cut condition");
}

std::optional<ThresholdCut> best_separating_prefix(const ArcCapacityView& view,
                                                   std::span<const double> phi, Vertex s, Vertex t) {
  const Vertex n = view.graph().vertex_count();
  Sweep sweep(view);
  const auto order = sweep_order(phi);
  std::optional<Vertex> best_length;
  double best = 0.0;
  for (Vertex i = 0; i + 1 < n; ++i) {
    sweep.add(order[i], 0.0);
    if (sweep.inside[t]) break;
    if (!sweep.inside[s]) continue;
    if (!best_length || sweep.capacity < best) {
      best = sweep.capacity;
      best_length = i + 1;
    }
  }
  if (!best_length) return std::nullopt;
  VertexSet side(n, 0);
  for (Vertex i = 0; i < *best_length; ++i) side[order[i]] = 1;
  const double capacity = directed_cut_value(view, side);
  return ThresholdCut{std::move(side), 0.0, capacity};
}

}  // namespace faircut
