#pragma once

#include <span>
#include <vector>

#include "faircut/graph.hpp"

namespace faircut {

// Vertex vector; a demand proper sums to zero (see is_balanced).
class Demand {
 public:
  Demand() = default;
  explicit Demand(Vertex vertex_count) : values_(vertex_count, 0.0) {}
  explicit Demand(std::vector<double> values) : values_(std::move(values)) {}

  // amount * (1_s - 1_t)
  static Demand st(Vertex vertex_count, Vertex s, Vertex t, double amount);

  Vertex size() const { return static_cast<Vertex>(values_.size()); }
  double operator[](Vertex v) const { return values_[v]; }
  double& operator[](Vertex v) { return values_[v]; }
  std::span<const double> values() const { return values_; }

  double sum() const;
  double l1_norm() const;
  bool is_zero() const;
  // |sum| <= 1e-9 * ||d||_1
  bool is_balanced() const;

  Demand& operator+=(const Demand& other);
  Demand& operator-=(const Demand& other);
  Demand& operator*=(double scale);

 private:
  std::vector<double> values_;
};

Demand operator+(Demand a, const Demand& b);
Demand operator-(Demand a, const Demand& b);

// Nonnegative amounts on the 2m arcs of a graph, in capacity units.
class FlowAssignment {
 public:
  FlowAssignment() = default;
  explicit FlowAssignment(ArcId arc_count) : values_(arc_count, 0.0) {}
  // Throws std::invalid_argument on a negative entry.
  explicit FlowAssignment(std::vector<double> values);

  // f(a) = congestion[a] * c'(a).
  static FlowAssignment from_congestion(const ArcCapacityView& view,
                                        std::span<const double> congestion);

  ArcId arc_count() const { return static_cast<ArcId>(values_.size()); }
  double operator[](ArcId a) const { return values_[a]; }
  std::span<const double> values() const { return values_; }

  void set(ArcId a, double amount);
  void add(ArcId a, double amount) { set(a, values_[a] + amount); }

  bool is_zero() const;

 private:
  std::vector<double> values_;
};

// max over arcs of f/c; +inf if a zero-capacity arc carries flow above eta.
double congestion(const ArcCapacityView& view, const FlowAssignment& f);
// congestion <= 1 + slack
bool is_feasible(const ArcCapacityView& view, const FlowAssignment& f, double slack = 1e-9);

// Arcwise sum; antiparallel amounts are kept, not cancelled.
FlowAssignment add_flows(const FlowAssignment& f, const FlowAssignment& g);

// Subtracts min(f(u,v), f(v,u)) from both arcs of every edge. Divergence is
// preserved exactly and so is the residual graph.
FlowAssignment cancel_antiparallel(const FlowAssignment& f);

// Drops the flow on arcs of removed edges (f|_{G_i}).
FlowAssignment restrict_flow(const FlowAssignment& f, const SubgraphMask& mask);

// d_v = sum of outflow - sum of inflow.
Demand divergence(const CapacitatedGraph& g, const FlowAssignment& f);

// Net amount leaving the vertex set: flow on arcs out of S minus flow on arcs
// into S.
double net_flow_across(const CapacitatedGraph& g, const FlowAssignment& f,
                       std::span<const std::uint8_t> in_set);

// c'(u,v) = c(u,v) - f(u,v) + f(v,u) on the arcs of edges kept by the mask.
// Flow on removed edges is ignored. Throws InvariantViolation if a derived
// capacity is below -eta; values in [-eta, 0) are clamped to 0.
ResidualView residual_view(const CapacitatedGraph& g, const SubgraphMask& mask,
                           const FlowAssignment& f);
ResidualView residual_view(const CapacitatedGraph& g, const FlowAssignment& f);

}  // namespace faircut
