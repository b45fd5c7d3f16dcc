#include "faircut/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dinic.hpp"

namespace faircut {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Component label per vertex over edges with positive capacity.
std::vector<int> component_labels(const CapacitatedGraph& g) {
  std::vector<int> label(g.vertex_count(), -1);
  int next = 0;
  for (Vertex root = 0; root < g.vertex_count(); ++root) {
    if (label[root] >= 0) continue;
    std::vector<Vertex> stack{root};
    label[root] = next;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.incident(v)) {
        if (label[inc.neighbor] < 0) {
          label[inc.neighbor] = next;
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++next;
  }
  return label;
}

struct RoutingProbe {
  bool feasible = false;
  FlowAssignment flow;
  VertexSet violated;
};

RoutingProbe probe_routing(const CapacitatedGraph& g, const Demand& d, double kappa,
                           double positive_total) {
  const int n = g.vertex_count();
  detail::Dinic net(n + 2);
  const int source = n;
  const int sink = n + 1;
  std::vector<int> arc_id(g.arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    arc_id[a] = net.add_arc(g.tail(a), g.head(a), kappa * static_cast<double>(g.capacity(a)));
  }
  for (Vertex v = 0; v < n; ++v) {
    if (d[v] > 0.0) net.add_arc(source, v, d[v]);
    if (d[v] < 0.0) net.add_arc(v, sink, -d[v]);
  }
  const double value = net.max_flow(source, sink);

  RoutingProbe probe;
  probe.feasible = value >= positive_total * (1.0 - 1e-10);
  if (probe.feasible) {
    std::vector<double> amounts(g.arc_count());
    for (ArcId a = 0; a < g.arc_count(); ++a) amounts[a] = std::max(0.0, net.flow(arc_id[a]));
    probe.flow = cancel_antiparallel(FlowAssignment(std::move(amounts)));
  } else {
    auto reach = net.reachable(source);
    probe.violated.assign(reach.begin(), reach.begin() + n);
  }
  return probe;
}

double cut_ratio(const CapacitatedGraph& g, const Demand& d, const VertexSet& side) {
  double inside = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (side[v]) inside += d[v];
  }
  const auto boundary = static_cast<double>(undirected_cut_value(g, side));
  if (boundary <= 0.0) return inside > 0.0 ? kInfinity : 0.0;
  return inside / boundary;
}

struct FairnessNetwork {
  bool feasible = false;
  FlowAssignment witness;
  double value = 0.0;
  VertexSet violated;
  double deficit = 0.0;
};

FairnessNetwork solve_fairness_network(const CapacitatedGraph& g, const VertexCut& cut,
                                       double alpha) {
  const int n = g.vertex_count();
  const int super_source = n;
  const int super_sink = n + 1;
  detail::Dinic net(n + 2);

  std::vector<double> excess(n, 0.0);
  std::vector<int> arc_id(g.arc_count(), -1);
  std::vector<double> lower(g.arc_count(), 0.0);
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Vertex u = g.tail(a);
    const Vertex v = g.head(a);
    const double c = static_cast<double>(g.capacity(a));
    const bool leaves = cut.contains(u) && !cut.contains(v);
    const bool enters = !cut.contains(u) && cut.contains(v);
    if (enters) continue;  // cut edges carry flow outward only
    if (leaves) {
      lower[a] = c / alpha;
      excess[v] += lower[a];
      excess[u] -= lower[a];
      arc_id[a] = net.add_arc(u, v, std::max(0.0, c - lower[a]));
    } else {
      arc_id[a] = net.add_arc(u, v, c);
    }
  }
  const double unbounded = static_cast<double>(g.total_capacity()) * 2.0 + 1.0;
  const int return_arc = net.add_arc(cut.sink(), cut.source(), unbounded);

  double required = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    if (excess[v] > 0.0) {
      net.add_arc(super_source, v, excess[v]);
      required += excess[v];
    } else if (excess[v] < 0.0) {
      net.add_arc(v, super_sink, -excess[v]);
    }
  }
  const double pushed = net.max_flow(super_source, super_sink);

  FairnessNetwork result;
  result.feasible = pushed >= required - g.tolerance();
  if (result.feasible) {
    std::vector<double> amounts(g.arc_count(), 0.0);
    for (ArcId a = 0; a < g.arc_count(); ++a) {
      if (arc_id[a] >= 0) amounts[a] = std::max(0.0, net.flow(arc_id[a])) + lower[a];
    }
    result.witness = FlowAssignment(std::move(amounts));
    result.value = net.flow(return_arc);
  } else {
    auto reach = net.reachable(super_source);
    result.violated.assign(reach.begin(), reach.begin() + n);
    result.deficit = required - pushed;
  }
  return result;
}

}  // namespace

MaxFlowResult max_flow_exact(const ArcCapacityView& view, Vertex s, Vertex t) {
  const CapacitatedGraph& g = view.graph();
  const Vertex n = g.vertex_count();
  if (s < 0 || t < 0 || s >= n || t >= n) throw std::invalid_argument("s or t out of range");
  if (s == t) throw std::invalid_argument("max flow needs s != t");

  detail::Dinic net(n);
  std::vector<int> arc_id(g.arc_count(), -1);
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (view.capacity(a) > 0.0) arc_id[a] = net.add_arc(g.tail(a), g.head(a), view.capacity(a));
  }
  const double value = net.max_flow(s, t);

  std::vector<double> amounts(g.arc_count(), 0.0);
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (arc_id[a] >= 0) amounts[a] = std::max(0.0, net.flow(arc_id[a]));
  }
  return {value, cancel_antiparallel(FlowAssignment(std::move(amounts))),
          VertexCut(net.reachable(s), s, t)};
}

MaxFlowResult max_flow_exact(const CapacitatedGraph& g, Vertex s, Vertex t) {
  return max_flow_exact(bidirected_view(g), s, t);
}

RoutingResult min_congestion_routing(const CapacitatedGraph& g, const Demand& d) {
  if (d.size() != g.vertex_count()) throw std::invalid_argument("demand size mismatch");
  if (!d.is_balanced()) throw std::invalid_argument("demand does not sum to zero");

  RoutingResult result{0.0, FlowAssignment(g.arc_count())};
  if (d.is_zero()) return result;

  // A component with nonzero net demand cannot be routed at any congestion.
  const auto label = component_labels(g);
  std::vector<double> net_by_component(g.vertex_count(), 0.0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) net_by_component[label[v]] += d[v];
  for (double net : net_by_component) {
    if (std::abs(net) > 1e-9 * d.l1_norm()) {
      result.opt = kInfinity;
      return result;
    }
  }

  double positive_total = 0.0;
  for (double x : d.values()) positive_total += std::max(x, 0.0);

  Capacity smallest = g.max_capacity();
  for (const Edge& e : g.edges()) smallest = std::min(smallest, e.capacity);
  // Routing along a spanning forest never puts more than positive_total on an edge.
  double hi = positive_total / static_cast<double>(smallest);

  double lo = 0.0;  // always the ratio of an actual cut, hence a true lower bound
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    double boundary = 0.0;
    for (const Incidence& inc : g.incident(v)) boundary += static_cast<double>(g.capacity(inc.out_arc));
    if (boundary > 0.0) lo = std::max(lo, std::abs(d[v]) / boundary);
  }

  RoutingProbe top = probe_routing(g, d, hi * (1.0 + 1e-12), positive_total);
  if (!top.feasible) throw std::logic_error("routing upper bound unexpectedly infeasible");
  FlowAssignment best = std::move(top.flow);

  double search_lo = lo;
  bool newton = true;
  for (int iter = 0; iter < 200; ++iter) {
    if (hi - lo <= kRoutingIntervalPrecision * std::max(1.0, lo)) break;
    if (!newton && hi - search_lo <= 0.5 * kRoutingIntervalPrecision * std::max(1.0, search_lo)) break;
    const double kappa = newton ? std::min(hi, lo * (1.0 + 1e-10)) : 0.5 * (search_lo + hi);
    RoutingProbe probe = probe_routing(g, d, kappa, positive_total);
    if (probe.feasible) {
      hi = kappa;
      best = std::move(probe.flow);
      continue;
    }
    search_lo = std::max(search_lo, kappa);
    const double ratio = cut_ratio(g, d, probe.violated);
    if (ratio > lo) {
      lo = ratio;
      search_lo = std::max(search_lo, lo);
    } else {
      newton = false;  // rounding stalled the cut iteration; fall back to bisection
    }
  }

  result.opt = (hi - lo <= kRoutingIntervalPrecision * std::max(1.0, lo)) ? lo : hi;
  result.flow = std::move(best);
  return result;
}

FairnessVerdict verify_fairness(const CapacitatedGraph& g, const VertexCut& cut, double alpha) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("fairness alpha must be >= 1");
  if (cut.vertex_count() != g.vertex_count()) throw std::invalid_argument("cut size mismatch");
  FairnessNetwork net = solve_fairness_network(g, cut, alpha);
  if (net.feasible) return FairnessCertificate{alpha, std::move(net.witness), net.value};
  return FairnessRefusal{alpha, std::move(net.violated), net.deficit};
}

double min_fair_alpha(const CapacitatedGraph& g, const VertexCut& cut) {
  auto accepts = [&](double alpha) { return solve_fairness_network(g, cut, alpha).feasible; };
  if (accepts(1.0)) return 1.0;

  const auto boundary = static_cast<double>(undirected_cut_value(g, cut.mask()));
  const auto arcs = static_cast<double>(outgoing_arcs(g, cut.mask()).size());
  double hi = std::max(2.0, boundary * arcs);
  if (!accepts(hi)) {
    hi *= 1e6;
    if (!accepts(hi)) return kInfinity;
  }
  double lo = 1.0;
  while (hi > lo * (1.0 + kFairAlphaPrecision)) {
    const double mid = std::sqrt(lo * hi);
    if (accepts(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace faircut
