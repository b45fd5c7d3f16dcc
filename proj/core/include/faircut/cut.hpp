#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faircut/flow.hpp"
#include "faircut/graph.hpp"

namespace faircut {

// Indicator vector over vertices; 1 marks membership.
using VertexSet = std::vector<std::uint8_t>;

VertexSet make_vertex_set(Vertex vertex_count, std::span<const Vertex> members);
std::vector<Vertex> set_members(std::span<const std::uint8_t> in_set);

// An (s,t)-cut (S, V \ S) with s in S and t not in S.
class VertexCut {
 public:
  // Throws std::invalid_argument unless s in S, t not in S and ids are in range.
  VertexCut(Vertex vertex_count, std::span<const Vertex> side, Vertex s, Vertex t);
  VertexCut(VertexSet in_side, Vertex s, Vertex t);

  Vertex vertex_count() const { return static_cast<Vertex>(in_side_.size()); }
  Vertex source() const { return source_; }
  Vertex sink() const { return sink_; }
  bool contains(Vertex v) const { return in_side_[v] != 0; }
  std::span<const std::uint8_t> mask() const { return in_side_; }
  std::vector<Vertex> members() const { return set_members(in_side_); }
  Vertex size() const;

  friend bool operator==(const VertexCut& a, const VertexCut& b) {
    return a.source_ == b.source_ && a.sink_ == b.sink_ && a.in_side_ == b.in_side_;
  }

 private:
  VertexSet in_side_;
  Vertex source_;
  Vertex sink_;
};

// Sum of capacities of arcs leaving the set. Works for any subset, including
// empty and full ones (value 0), which the submodularity checks rely on.
double directed_cut_value(const ArcCapacityView& view, std::span<const std::uint8_t> in_set);
double directed_cut_value(const ArcCapacityView& view, const VertexCut& cut);

// c_G(boundary S), each undirected edge counted once; the masked overload
// skips removed edges (c_{G_i}).
Capacity undirected_cut_value(const CapacitatedGraph& g, std::span<const std::uint8_t> in_set);
Capacity undirected_cut_value(const CapacitatedGraph& g, const SubgraphMask& mask,
                              std::span<const std::uint8_t> in_set);

// Arcs (u,v) with u in S and v outside, in increasing arc order.
std::vector<ArcId> outgoing_arcs(const CapacitatedGraph& g, std::span<const std::uint8_t> in_set);

inline double net_flow_across(const CapacitatedGraph& g, const FlowAssignment& f,
                              const VertexCut& cut) {
  return net_flow_across(g, f, cut.mask());
}

}  // namespace faircut
