#include "faircut/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "faircut/errors.hpp"

namespace faircut {

Demand Demand::st(Vertex vertex_count, Vertex s, Vertex t, double amount) {
  if (s < 0 || t < 0 || s >= vertex_count || t >= vertex_count || s == t) {
    throw std::invalid_argument("st demand needs two distinct in-range vertices");
  }
  Demand d(vertex_count);
  d[s] = amount;
  d[t] = -amount;
  return d;
}

double Demand::sum() const {
  double total = 0.0;
  for (double x : values_) total += x;
  return total;
}

double Demand::l1_norm() const {
  double total = 0.0;
  for (double x : values_) total += std::abs(x);
  return total;
}

bool Demand::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

bool Demand::is_balanced() const { return std::abs(sum()) <= 1e-9 * l1_norm(); }

Demand& Demand::operator+=(const Demand& other) {
  if (other.size() != size()) throw std::invalid_argument("demand size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Demand& Demand::operator-=(const Demand& other) {
  if (other.size() != size()) throw std::invalid_argument("demand size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Demand& Demand::operator*=(double scale) {
  for (double& x : values_) x *= scale;
  return *this;
}

Demand operator+(Demand a, const Demand& b) { return a += b; }
Demand operator-(Demand a, const Demand& b) { return a -= b; }

FlowAssignment::FlowAssignment(std::vector<double> values) : values_(std::move(values)) {
  for (double x : values_) {
    if (!(x >= 0.0)) throw std::invalid_argument("flow values must be nonnegative");
  }
}

FlowAssignment FlowAssignment::from_congestion(const ArcCapacityView& view,
                                               std::span<const double> congestion) {
  if (congestion.size() != static_cast<std::size_t>(view.arc_count())) {
    throw std::invalid_argument("congestion vector does not match the arc count");
  }
  FlowAssignment f(view.arc_count());
  for (ArcId a = 0; a < view.arc_count(); ++a) {
    if (congestion[a] < 0.0) throw std::invalid_argument("negative congestion entry");
    f.values_[a] = congestion[a] * view.capacity(a);
  }
  return f;
}

void FlowAssignment::set(ArcId a, double amount) {
  if (!(amount >= 0.0)) {
    throw std::invalid_argument("negative flow " + std::to_string(amount) + " on arc " +
                                std::to_string(a));
  }
  values_[a] = amount;
}

bool FlowAssignment::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

double congestion(const ArcCapacityView& view, const FlowAssignment& f) {
  const double eta = view.graph().tolerance();
  double worst = 0.0;
  for (ArcId a = 0; a < view.arc_count(); ++a) {
    const double c = view.capacity(a);
    if (c <= 0.0) {
      if (f[a] > eta) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, f[a] / c);
  }
  return worst;
}

bool is_feasible(const ArcCapacityView& view, const FlowAssignment& f, double slack) {
  return congestion(view, f) <= 1.0 + slack;
}

FlowAssignment add_flows(const FlowAssignment& f, const FlowAssignment& g) {
  if (f.arc_count() != g.arc_count()) throw std::invalid_argument("flow size mismatch");
  std::vector<double> sum(f.arc_count());
  for (ArcId a = 0; a < f.arc_count(); ++a) sum[a] = f[a] + g[a];
  return FlowAssignment(std::move(sum));
}

FlowAssignment cancel_antiparallel(const FlowAssignment& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (ArcId a = 0; a + 1 < f.arc_count(); a += 2) {
    const double common = std::min(out[a], out[a + 1]);
    out[a] -= common;
    out[a + 1] -= common;
  }
  return FlowAssignment(std::move(out));
}

FlowAssignment restrict_flow(const FlowAssignment& f, const SubgraphMask& mask) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (ArcId a = 0; a < f.arc_count(); ++a) {
    if (mask.removed(edge_of(a))) out[a] = 0.0;
  }
  return FlowAssignment(std::move(out));
}

Demand divergence(const CapacitatedGraph& g, const FlowAssignment& f) {
  if (f.arc_count() != g.arc_count()) throw std::invalid_argument("flow does not match graph");
  Demand d(g.vertex_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (f[a] == 0.0) continue;
    d[g.tail(a)] += f[a];
    d[g.head(a)] -= f[a];
  }
  return d;
}

double net_flow_across(const CapacitatedGraph& g, const FlowAssignment& f,
                       std::span<const std::uint8_t> in_set) {
  double net = 0.0;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const bool from_inside = in_set[g.tail(a)] != 0;
    const bool to_inside = in_set[g.head(a)] != 0;
    if (from_inside && !to_inside) net += f[a];
    if (!from_inside && to_inside) net -= f[a];
  }
  return net;
}

ResidualView residual_view(const CapacitatedGraph& g, const SubgraphMask& mask,
                           const FlowAssignment& f) {
  if (f.arc_count() != g.arc_count()) throw std::invalid_argument("flow does not match graph");
  const double eta = g.tolerance();
  std::vector<double> cap(g.arc_count(), 0.0);
  std::vector<std::uint8_t> present(g.arc_count(), 0);
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (mask.removed(edge_of(a))) continue;
    const double c = static_cast<double>(g.capacity(a)) - f[a] + f[reverse_arc(a)];
    if (c < -eta) {
      throw InvariantViolation("residual capacity " + std::to_string(c) + " on arc " +
                               std::to_string(a) + " is negative beyond tolerance");
    }
    cap[a] = std::max(c, 0.0);
    present[a] = 1;
  }
  return {g, std::move(cap), std::move(present)};
}

ResidualView residual_view(const CapacitatedGraph& g, const FlowAssignment& f) {
  return residual_view(g, SubgraphMask(g.edge_count()), f);
}

}  // namespace faircut
