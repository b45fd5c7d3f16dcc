#pragma once

// Blocking-flow max-flow over real capacities. Shared by the exact oracles;
// with integer capacities every intermediate value is an integer-valued
// double, so results are exact.

#include <cstdint>
#include <vector>

namespace faircut::detail {

class Dinic {
 public:
  explicit Dinic(int node_count);

  // Returns the index of the forward arc; its residual twin is index ^ 1.
  int add_arc(int from, int to, double capacity);

  double max_flow(int source, int sink);

  // Flow currently pushed on a forward arc.
  double flow(int arc) const { return original_[arc] - residual_[arc]; }
  int node_count() const { return static_cast<int>(first_.size()); }

  // Nodes reachable from `source` through arcs with residual capacity above
  // the positivity threshold. Valid after max_flow.
  std::vector<std::uint8_t> reachable(int source) const;

 private:
  bool build_levels(int source, int sink);
  double push(int v, int sink, double limit);

  std::vector<int> first_;
  std::vector<int> next_;
  std::vector<int> head_;
  std::vector<double> residual_;
  std::vector<double> original_;
  std::vector<int> level_;
  std::vector<int> cursor_;
  double threshold_ = 0.0;
};

}  // namespace faircut::detail
