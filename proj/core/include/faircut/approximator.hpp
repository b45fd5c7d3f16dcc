#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faircut/cut.hpp"
#include "faircut/flow.hpp"
#include "faircut/graph.hpp"

namespace faircut {

// Congestion approximator R stored as explicit normalized cut rows
// (S_r, 1 / c_G(dS_r)). Every row is a cut-condition lower bound, so
// ||R d||_inf <= OPT(d) holds for any demand. Immutable once built; apply and
// apply_transpose are pure.
//
// Matrices built from spanning trees also keep the rooted trees, which lets
// the solver apply R in O(n) per tree instead of O(nnz).
class CutMatrix {
 public:
  struct RootedTree {
    std::vector<Vertex> order;       // BFS order from the root
    std::vector<Vertex> parent;      // -1 at the root
    std::vector<std::int64_t> row;   // row owned by the subtree of v, or -1
  };

  CutMatrix() = default;

  // Rows given as vertex lists. Throws std::invalid_argument on an improper
  // row (empty or all vertices) or one whose cut capacity in g is zero.
  static CutMatrix from_rows(const CapacitatedGraph& g, const std::vector<std::vector<Vertex>>& rows,
                             std::string descriptor = "explicit");
  // Rows with caller-chosen positive weights (used for extra lower-bound rows
  // normalized by a subgraph's cut capacity).
  static CutMatrix from_weighted_rows(Vertex vertex_count, const std::vector<std::vector<Vertex>>& rows,
                                      const std::vector<double>& weights,
                                      std::string descriptor = "weighted");

  Vertex vertex_count() const { return vertex_count_; }
  std::size_t row_count() const { return weights_.size(); }
  std::span<const Vertex> row(std::size_t r) const {
    return {members_.data() + offsets_[r], members_.data() + offsets_[r + 1]};
  }
  double weight(std::size_t r) const { return weights_[r]; }
  std::span<const std::uint32_t> rows_containing(Vertex v) const {
    return {column_rows_.data() + column_offsets_[v], column_rows_.data() + column_offsets_[v + 1]};
  }
  std::size_t nonzeros() const { return members_.size(); }

  // out[r] = weight_r * sum_{v in S_r} x_v
  void apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> apply(const Demand& d) const;
  // out[v] = sum_r y_r * weight_r * [v in S_r]
  void apply_transpose(std::span<const double> y, std::span<double> out) const;
  // ||R d||_inf
  double congestion_estimate(const Demand& d) const;

  // alpha used by the solver (1 for the exhaustive builder); unset until
  // calibrated for tree-based matrices.
  std::optional<double> alpha() const { return alpha_; }
  void set_alpha(double alpha);
  bool exact() const { return exact_; }
  const std::string& descriptor() const { return descriptor_; }
  const std::vector<RootedTree>& trees() const { return trees_; }

  std::string to_json() const;
  static CutMatrix from_json(const CapacitatedGraph& g, const std::string& text);

 private:
  friend CutMatrix build_exhaustive(const CapacitatedGraph& g);
  friend CutMatrix build_multi_tree(const CapacitatedGraph& g, int count, std::uint64_t seed);
  friend CutMatrix build_tree(const CapacitatedGraph& g, std::optional<std::uint64_t> seed);

  static CutMatrix from_trees(const CapacitatedGraph& g,
                              const std::vector<std::optional<std::uint64_t>>& seeds,
                              std::string descriptor);
  void append_row(const CapacitatedGraph& g, std::span<const Vertex> sorted_members);
  void build_columns();

  Vertex vertex_count_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> members_;
  std::vector<double> weights_;
  std::vector<std::int64_t> column_offsets_;
  std::vector<std::uint32_t> column_rows_;
  std::vector<RootedTree> trees_;
  std::optional<double> alpha_;
  bool exact_ = false;
  std::string descriptor_;
};

// One row per proper subset containing vertex 0: 2^(n-1) - 1 rows, alpha = 1.
// Requires a connected graph with 2 <= n <= 20.
CutMatrix build_exhaustive(const CapacitatedGraph& g);

// The n-1 fundamental cuts (subtrees, rooted at vertex 0) of a maximum-capacity
// spanning tree, ties broken by edge id. A seed multiplies every capacity by
// an independent factor in [0.5, 1.5) before the tree is chosen. Throws
// DisconnectedGraph on a disconnected graph.
CutMatrix build_tree(const CapacitatedGraph& g, std::optional<std::uint64_t> seed = std::nullopt);

// Union of `count` seeded trees with duplicate rows dropped; tree i uses
// derive_seed(seed, i), so count = 1 matches build_tree(g, seed).
CutMatrix build_multi_tree(const CapacitatedGraph& g, int count, std::uint64_t seed);

// max over sampled demands (random (s,t) pairs and random sparse demands) of
// OPT(d) / ||R d||_inf, using the exact routing oracle. Ratios within 1e-9 of 1
// count as 1. Returns +inf if some sampled demand has ||R d|| = 0 < OPT(d).
double measure_alpha(const CutMatrix& r, const CapacitatedGraph& g, int trials, std::uint64_t seed);

// Sets the solver alpha: 1 for an exact matrix, otherwise 2 * measure_alpha.
// Throws std::runtime_error if the measurement is infinite.
double calibrate_alpha(CutMatrix& r, const CapacitatedGraph& g, int trials, std::uint64_t seed);

// Row l1 norms of R * D_view * C_view, i.e. weight_r times the view capacity
// of all arcs crossing S_r in either direction.
std::vector<double> operator_row_norms(const CutMatrix& r, const ArcCapacityView& view);

}  // namespace faircut
