#include "faircut/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "faircut/errors.hpp"

namespace faircut {

CapacitatedGraph::CapacitatedGraph(Vertex vertex_count, std::span<const Edge> edges,
                                   Capacity capacity_bound)
    : vertex_count_(vertex_count), capacity_bound_(capacity_bound) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  if (capacity_bound < 1) throw std::invalid_argument("capacity bound must be >= 1");

  std::map<std::pair<Vertex, Vertex>, EdgeId> index;
  for (const Edge& in : edges) {
    if (in.u < 0 || in.u >= vertex_count || in.v < 0 || in.v >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(in.u) + ", " +
                                  std::to_string(in.v) + ")");
    }
    if (in.u == in.v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(in.u));
    }
    if (in.capacity < 1) {
      throw std::invalid_argument("non-positive capacity " + std::to_string(in.capacity));
    }
    const auto key = std::minmax(in.u, in.v);
    auto [it, fresh] = index.try_emplace({key.first, key.second}, edge_count());
    if (fresh) {
      edges_.push_back({key.first, key.second, in.capacity});
    } else {
      edges_[it->second].capacity += in.capacity;
    }
  }

  max_capacity_ = 1;
  for (const Edge& e : edges_) {
    if (e.capacity > capacity_bound_) {
      throw std::invalid_argument("capacity " + std::to_string(e.capacity) +
                                  " exceeds bound " + std::to_string(capacity_bound_));
    }
    max_capacity_ = std::max(max_capacity_, e.capacity);
    total_capacity_ += e.capacity;
  }

  std::vector<std::int64_t> degree(vertex_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (Vertex v = 0; v < vertex_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[vertex_count_]);
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    adjacency_[cursor[edges_[e].u]++] = {forward_arc(e), edges_[e].v};
    adjacency_[cursor[edges_[e].v]++] = {backward_arc(e), edges_[e].u};
  }
}

std::vector<Vertex> CapacitatedGraph::unreachable_from_first() const {
  std::vector<Vertex> stranded;
  if (vertex_count_ == 0) return stranded;
  std::vector<std::uint8_t> seen(vertex_count_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : incident(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        stack.push_back(inc.neighbor);
      }
    }
  }
  for (Vertex v = 0; v < vertex_count_; ++v) {
    if (!seen[v]) stranded.push_back(v);
  }
  return stranded;
}

void require_connected(const CapacitatedGraph& g) {
  auto stranded = g.unreachable_from_first();
  if (stranded.empty()) return;
  std::string what = "graph is disconnected: vertices {";
  for (std::size_t i = 0; i < stranded.size() && i < 8; ++i) {
    if (i) what += ", ";
    what += std::to_string(stranded[i]);
  }
  if (stranded.size() > 8) what += ", ...";
  what += "} are unreachable from vertex 0";
  throw DisconnectedGraph(what, std::move(stranded));
}

std::size_t SubgraphMask::removed_count() const {
  return static_cast<std::size_t>(std::count(removed_.begin(), removed_.end(), std::uint8_t{1}));
}

ArcCapacityView::ArcCapacityView(const CapacitatedGraph& graph, std::vector<double> capacity,
                                 std::vector<std::uint8_t> present)
    : graph_(&graph), capacity_(std::move(capacity)), present_(std::move(present)) {
  if (capacity_.size() != static_cast<std::size_t>(graph.arc_count()) ||
      present_.size() != capacity_.size()) {
    throw std::invalid_argument("arc capacity view does not match the graph's arc count");
  }
}

BidirectedView bidirected_view(const CapacitatedGraph& g) {
  std::vector<double> cap(g.arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) cap[a] = static_cast<double>(g.capacity(a));
  return {g, std::move(cap), std::vector<std::uint8_t>(g.arc_count(), 1)};
}

ArcCapacityView masked_view(const CapacitatedGraph& g, const SubgraphMask& mask) {
  std::vector<double> cap(g.arc_count(), 0.0);
  std::vector<std::uint8_t> present(g.arc_count(), 0);
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (mask.contains(edge_of(a))) {
      cap[a] = static_cast<double>(g.capacity(a));
      present[a] = 1;
    }
  }
  return {g, std::move(cap), std::move(present)};
}

}  // namespace faircut
