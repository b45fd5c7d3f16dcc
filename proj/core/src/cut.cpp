#include "faircut/cut.hpp"

#include <stdexcept>
#include <string>

namespace faircut {

VertexSet make_vertex_set(Vertex vertex_count, std::span<const Vertex> members) {
  VertexSet set(vertex_count, 0);
  for (Vertex v : members) {
    if (v < 0 || v >= vertex_count) {
      throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range");
    }
    set[v] = 1;
  }
  return set;
}

std::vector<Vertex> set_members(std::span<const std::uint8_t> in_set) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < in_set.size(); ++v) {
    if (in_set[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

VertexCut::VertexCut(Vertex vertex_count, std::span<const Vertex> side, Vertex s, Vertex t)
    : VertexCut(make_vertex_set(vertex_count, side), s, t) {}

VertexCut::VertexCut(VertexSet in_side, Vertex s, Vertex t)
    : in_side_(std::move(in_side)), source_(s), sink_(t) {
  const auto n = static_cast<Vertex>(in_side_.size());
  if (s < 0 || s >= n || t < 0 || t >= n) throw std::invalid_argument("s or t out of range");
  if (s == t) throw std::invalid_argument("s and t must differ");
  if (!in_side_[s]) throw std::invalid_argument("cut side does not contain s");
  if (in_side_[t]) throw std::invalid_argument("cut side contains t (improper cut)");
}

Vertex VertexCut::size() const {
  Vertex count = 0;
  for (auto x : in_side_) count += x ? 1 : 0;
  return count;
}

double directed_cut_value(const ArcCapacityView& view, std::span<const std::uint8_t> in_set) {
  const CapacitatedGraph& g = view.graph();
  double total = 0.0;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (in_set[g.tail(a)] && !in_set[g.head(a)]) total += view.capacity(a);
  }
  return total;
}

double directed_cut_value(const ArcCapacityView& view, const VertexCut& cut) {
  return directed_cut_value(view, cut.mask());
}

Capacity undirected_cut_value(const CapacitatedGraph& g, std::span<const std::uint8_t> in_set) {
  Capacity total = 0;
  for (const Edge& e : g.edges()) {
    if (in_set[e.u] != in_set[e.v]) total += e.capacity;
  }
  return total;
}

Capacity undirected_cut_value(const CapacitatedGraph& g, const SubgraphMask& mask,
                              std::span<const std::uint8_t> in_set) {
  Capacity total = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (mask.contains(e) && in_set[edge.u] != in_set[edge.v]) total += edge.capacity;
  }
  return total;
}

std::vector<ArcId> outgoing_arcs(const CapacitatedGraph& g, std::span<const std::uint8_t> in_set) {
  std::vector<ArcId> out;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (in_set[g.tail(a)] && !in_set[g.head(a)]) out.push_back(a);
  }
  return out;
}

}  // namespace faircut
