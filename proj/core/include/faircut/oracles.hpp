#pragma once

#include <variant>

#include "faircut/cut.hpp"
#include "faircut/flow.hpp"
#include "faircut/graph.hpp"

namespace faircut {

// Precision constants of the exact oracles.
inline constexpr double kRoutingIntervalPrecision = 1e-9;  // absolute, times max(1, opt)
inline constexpr double kFairAlphaPrecision = 1e-6;        // relative

struct MaxFlowResult {
  double value = 0.0;
  FlowAssignment flow;  // antiparallel amounts cancelled
  VertexCut min_cut;    // source side of a minimum cut
};

// Exact (s,t) max-flow on a directed capacity view, or on the bidirected
// graph. A disconnected pair yields value 0 and s's reachable set as the cut.
MaxFlowResult max_flow_exact(const ArcCapacityView& view, Vertex s, Vertex t);
MaxFlowResult max_flow_exact(const CapacitatedGraph& g, Vertex s, Vertex t);

struct RoutingResult {
  double opt = 0.0;     // OPT(d); +inf if d cannot be routed at all
  FlowAssignment flow;  // routes d with congestion <= opt * (1 + 1e-6)
};

// Minimum congestion needed to route d in the bidirected graph. Searches the
// congestion scale kappa with a super-source/super-sink max-flow feasibility
// test; infeasible probes contribute the violated cut's ratio d(S)/c(dS) as a
// lower bound.
RoutingResult min_congestion_routing(const CapacitatedGraph& g, const Demand& d);

// Fairness witness: a feasible (s,t)-flow sending at least c/alpha
// across every arc leaving S.
struct FairnessCertificate {
  double alpha = 1.0;
  FlowAssignment witness;
  double value = 0.0;  // (s,t)-flow value of the witness
};

// The lower-bounded flow problem is infeasible. `violated_set` is the
// Hoffman cut found by the feasibility max-flow and `deficit` the demand it
// cannot pass.
struct FairnessRefusal {
  double alpha = 1.0;
  VertexSet violated_set;
  double deficit = 0.0;
};

using FairnessVerdict = std::variant<FairnessCertificate, FairnessRefusal>;

// Decides whether `cut` is alpha-fair. Cut edges may only carry flow outward,
// with lower bound c/alpha; all other edges are bidirected arcs of capacity c.
// Throws std::invalid_argument if alpha < 1.
FairnessVerdict verify_fairness(const CapacitatedGraph& g, const VertexCut& cut, double alpha);

// Smallest alpha accepted by verify_fairness, to relative precision 1e-6.
// +inf when no finite alpha works (some cut arc cannot carry outward flow).
double min_fair_alpha(const CapacitatedGraph& g, const VertexCut& cut);

}  // namespace faircut
