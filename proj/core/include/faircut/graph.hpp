#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faircut/types.hpp"

namespace faircut {

// Capacities above this are rejected unless a caller configures a larger
// bound; 2^40 keeps every capacity sum exactly representable as a double.
inline constexpr Capacity kDefaultCapacityBound = Capacity{1} << 40;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Capacity capacity = 0;
};

struct Incidence {
  ArcId out_arc;  // arc leaving the scanned vertex
  Vertex neighbor;
};

// Undirected graph with positive integer capacities. Parallel input edges are
// merged by summing capacities and every edge is stored with u < v. Immutable
// once built.
class CapacitatedGraph {
 public:
  CapacitatedGraph() = default;
  CapacitatedGraph(Vertex vertex_count, std::span<const Edge> edges,
                   Capacity capacity_bound = kDefaultCapacityBound);

  Vertex vertex_count() const { return vertex_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  ArcId arc_count() const { return 2 * edge_count(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  Vertex tail(ArcId a) const {
    const Edge& e = edges_[edge_of(a)];
    return (a & 1) ? e.v : e.u;
  }
  Vertex head(ArcId a) const {
    const Edge& e = edges_[edge_of(a)];
    return (a & 1) ? e.u : e.v;
  }
  Capacity capacity(ArcId a) const { return edges_[edge_of(a)].capacity; }

  std::span<const Incidence> incident(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  // W: the largest edge capacity present (1 for an edgeless graph).
  Capacity max_capacity() const { return max_capacity_; }
  Capacity capacity_bound() const { return capacity_bound_; }
  Capacity total_capacity() const { return total_capacity_; }

  // Global absolute tolerance eta = 1e-9 * W used by every ">= 0" / "== 0"
  // check in the library.
  double tolerance() const { return 1e-9 * static_cast<double>(max_capacity_); }

  // Vertices not reachable from vertex 0, in increasing order.
  std::vector<Vertex> unreachable_from_first() const;
  bool is_connected() const { return unreachable_from_first().empty(); }

 private:
  Vertex vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Incidence> adjacency_;
  Capacity max_capacity_ = 1;
  Capacity capacity_bound_ = kDefaultCapacityBound;
  Capacity total_capacity_ = 0;
};

// Throws DisconnectedGraph naming the stranded vertices.
void require_connected(const CapacitatedGraph& g);

// Undirected edges removed from a base graph; the masked graph G_i keeps
// c_{G_i}(u,v) <= c_G(u,v) on every arc.
class SubgraphMask {
 public:
  SubgraphMask() = default;
  explicit SubgraphMask(EdgeId edge_count) : removed_(edge_count, 0) {}

  void remove(EdgeId e) { removed_[e] = 1; }
  bool removed(EdgeId e) const { return !removed_.empty() && removed_[e] != 0; }
  bool contains(EdgeId e) const { return !removed(e); }
  std::size_t removed_count() const;

 private:
  std::vector<std::uint8_t> removed_;
};

// Directed arc-capacity map over the 2m arc slots of a graph. Used for the
// bidirected graph, masked subgraphs and residual graphs alike; absent arcs
// report capacity 0.
class ArcCapacityView {
 public:
  ArcCapacityView(const CapacitatedGraph& graph, std::vector<double> capacity,
                  std::vector<std::uint8_t> present);

  const CapacitatedGraph& graph() const { return *graph_; }
  ArcId arc_count() const { return static_cast<ArcId>(capacity_.size()); }
  double capacity(ArcId a) const { return capacity_[a]; }
  bool present(ArcId a) const { return present_[a] != 0; }
  std::span<const double> capacities() const { return capacity_; }

 private:
  const CapacitatedGraph* graph_;
  std::vector<double> capacity_;
  std::vector<std::uint8_t> present_;
};

using BidirectedView = ArcCapacityView;
using ResidualView = ArcCapacityView;

BidirectedView bidirected_view(const CapacitatedGraph& g);
ArcCapacityView masked_view(const CapacitatedGraph& g, const SubgraphMask& mask);

}  // namespace faircut
