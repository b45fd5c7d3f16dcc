#include <gtest/gtest.h>

#include <cmath>

#include "brute_force.hpp"
#include "faircut/driver.hpp"
#include "faircut/errors.hpp"
#include "faircut/generators.hpp"
#include "faircut/oracles.hpp"
#include "faircut/random.hpp"

namespace faircut {
namespace {

using testing::brute_directed_cut;

CapacitatedGraph single_edge(Capacity c) { return CapacitatedGraph(2, std::vector<Edge>{{0, 1, c}}); }
// s=0, a=1, t=2
CapacitatedGraph path_sat() { return CapacitatedGraph(3, std::vector<Edge>{{0, 1, 2}, {1, 2, 1}}); }

FairCutOptions exact_options(double eps = 0.05) {
  FairCutOptions options;
  options.epsilon = eps;
  options.approximator = "exhaustive";
  options.strict_contraction = false;
  return options;
}

TEST(UnsaturatedArcs, Examples) {
  // Star from 0 with caps 10, 20, 30; S = {0}.
  const CapacitatedGraph g(4, std::vector<Edge>{{0, 1, 10}, {0, 2, 20}, {0, 3, 30}});
  const VertexSet side{1, 0, 0, 0};
  const double eps = 0.05;

  EXPECT_EQ(unsaturated_arcs(g, FlowAssignment(g.arc_count()), side, eps),
            (std::vector<ArcId>{forward_arc(0), forward_arc(1), forward_arc(2)}));

  FlowAssignment full(g.arc_count());
  for (EdgeId e = 0; e < 3; ++e) full.set(forward_arc(e), static_cast<double>(g.edge(e).capacity));
  EXPECT_TRUE(unsaturated_arcs(g, full, side, eps).empty());

  FlowAssignment boundary(g.arc_count());
  boundary.set(forward_arc(0), (1.0 - 4.0 * eps) * 10.0);
  boundary.set(forward_arc(1), (1.0 - 4.0 * eps) * 20.0 + 1e-6);
  EXPECT_EQ(unsaturated_arcs(g, boundary, side, eps), (std::vector<ArcId>{forward_arc(0), forward_arc(2)}));
}

TEST(MakeState, MasksSaturatedCutEdges) {
  const CapacitatedGraph g(4, std::vector<Edge>{{0, 1, 10}, {0, 2, 20}, {1, 3, 5}, {2, 3, 5}});
  FlowAssignment f(g.arc_count());
  f.set(forward_arc(0), 10.0);
  f.set(forward_arc(2), 5.0);
  const IterationState state = make_state(g, VertexCut(4, std::vector<Vertex>{0}, 0, 3), f, 0.05);
  EXPECT_TRUE(state.mask.removed(0));
  EXPECT_FALSE(state.mask.removed(1));
  EXPECT_FALSE(state.mask.removed(2));
  EXPECT_EQ(state.unsaturated, (std::vector<ArcId>{forward_arc(1)}));
  EXPECT_DOUBLE_EQ(state.potential, 20.0);
  // Every cut arc still present keeps at least 4 eps c of residual capacity.
  const ResidualView residual = working_residual(g, state);
  for (ArcId a : outgoing_arcs(g, state.cut.mask())) {
    if (residual.present(a)) EXPECT_GE(residual.capacity(a), 4.0 * 0.05 * static_cast<double>(g.capacity(a)) - 1e-9);
  }
}

TEST(Uncross, SameCutIsIdempotent) {
  const CapacitatedGraph g = path_sat();
  const BidirectedView view = bidirected_view(g);
  const VertexCut s(3, std::vector<Vertex>{0, 1}, 0, 2);
  EXPECT_EQ(uncross(view, s, s), s);
}

TEST(Uncross, PicksTheSmallerSideWithIntersectionOnTies) {
  // Path 0-1-2-3 with caps 3, 1, 2.
  const CapacitatedGraph g(4, std::vector<Edge>{{0, 1, 3}, {1, 2, 1}, {2, 3, 2}});
  const BidirectedView view = bidirected_view(g);
  const VertexCut a(4, std::vector<Vertex>{0, 1}, 0, 3);
  const VertexCut b(4, std::vector<Vertex>{0, 2}, 0, 3);
  // Union {0,1,2}: 2. Intersection {0}: 3.
  EXPECT_EQ(uncross(view, a, b).members(), (std::vector<Vertex>{0, 1, 2}));
  const CapacitatedGraph even(4, std::vector<Edge>{{0, 1, 2}, {1, 2, 1}, {2, 3, 2}});
  const BidirectedView even_view = bidirected_view(even);
  // Union {0,1,2}: 2. Intersection {0}: 2.
  EXPECT_EQ(uncross(even_view, a, b).members(), (std::vector<Vertex>{0}));
  EXPECT_THROW(uncross(view, a, VertexCut(4, std::vector<Vertex>{3}, 3, 0)), std::invalid_argument);
}

TEST(IterateOnce, SingleEdgeFlowBranch) {
  const CapacitatedGraph g = single_edge(1);
  const IterationState state = make_state(g, VertexCut(2, std::vector<Vertex>{0}, 0, 1),
                                          FlowAssignment(g.arc_count()), 0.05);
  EXPECT_DOUBLE_EQ(state.potential, 1.0);
  const CutMatrix r = build_approximator(g, "exhaustive", 0, 1);
  const StepResult step = iterate_once(g, state, 0.05, r, 100000);
  ASSERT_EQ(step.branch, Branch::Flow);
  EXPECT_GE(step.next.flow[forward_arc(0)], 0.25);
  EXPECT_LE(step.next.potential, 0.75 * state.potential);
  EXPECT_EQ(step.next.index, 2);
  EXPECT_EQ(step.next.cut, state.cut);
}

TEST(RoundLimit, Formula) {
  const CapacitatedGraph g = path_sat();
  EXPECT_EQ(round_limit(g, 0.05), static_cast<int>(std::ceil(std::log(9.0 * 2.0 * 16.0 / 0.05) / std::log(4.0 / 3.0))));
}

TEST(FairCut, SingleEdge) {
  const CapacitatedGraph g = single_edge(10);
  const FairCutResult result = fair_cut(g, 0, 1, exact_options());
  EXPECT_EQ(result.cut.members(), (std::vector<Vertex>{0}));
  ASSERT_TRUE(result.achieved_alpha.has_value());
  EXPECT_NEAR(*result.achieved_alpha, 1.0, 1e-3);
  EXPECT_LT(result.final_potential, 4.0 * 0.05);
}

TEST(FairCut, PathFindsTheFairCut) {
  const CapacitatedGraph g = path_sat();
  const FairCutResult result = fair_cut(g, 0, 2, exact_options());
  EXPECT_EQ(result.cut.members(), (std::vector<Vertex>{0, 1}));
  ASSERT_TRUE(result.achieved_alpha.has_value());
  EXPECT_LE(*result.achieved_alpha, 1.3);
  EXPECT_EQ(result.cut_value, 1.0);
}

TEST(FairCut, RejectsBadArguments) {
  const CapacitatedGraph g = path_sat();
  FairCutOptions options = exact_options();
  EXPECT_THROW(fair_cut(g, 0, 0, options), std::invalid_argument);
  EXPECT_THROW(fair_cut(g, 0, 3, options), std::invalid_argument);
  options.epsilon = 0.25;
  EXPECT_THROW(fair_cut(g, 0, 2, options), std::invalid_argument);
  options.epsilon = 0.0;
  EXPECT_THROW(fair_cut(g, 0, 2, options), std::invalid_argument);
  const CapacitatedGraph split(4, std::vector<Edge>{{0, 1, 1}, {2, 3, 1}});
  EXPECT_THROW(fair_cut(split, 0, 3, exact_options()), DisconnectedGraph);
  options = exact_options();
  options.approximator = "forest";
  EXPECT_THROW(fair_cut(g, 0, 2, options), std::invalid_argument);
  options.approximator = "multitree:x";
  EXPECT_THROW(fair_cut(g, 0, 2, options), std::invalid_argument);
}

TEST(FairCut, ZeroBudgetRaisesSolverExhaustedWithTrace) {
  const CapacitatedGraph g = single_edge(3);
  FairCutOptions options = exact_options();
  options.budget = 0;
  try {
    fair_cut(g, 0, 1, options);
    FAIL() << "expected SolverExhausted";
  } catch (const SolverExhausted& e) {
    ASSERT_EQ(e.trace().size(), 1U);
    EXPECT_EQ(e.trace()[0].branch, Branch::Exhausted);
  }
}

TEST(FairCut, MaxIterationsOverride) {
  const CapacitatedGraph g = random_connected_graph(10, 20, 50, 4);
  FairCutOptions options = exact_options();
  options.max_iterations = 1;
  const FairCutResult result = fair_cut(g, 0, 9, options);
  EXPECT_EQ(result.trace.size(), 1U);
}

class DriverFuzz : public ::testing::TestWithParam<int> {};

TEST_P(DriverFuzz, SmallGraphsMatchTheMinCut) {
  Rng rng(derive_seed(11000, GetParam()));
  const auto n = static_cast<Vertex>(rng.uniform_int(2, 10));
  const CapacitatedGraph g = random_connected_graph(n, static_cast<EdgeId>(rng.uniform_int(n - 1, 3 * n)), 30,
                                                    rng.next());
  FairCutOptions options = exact_options();
  options.seed = rng.next();
  const FairCutResult result = fair_cut(g, 0, n - 1, options);
  const double maxflow = max_flow_exact(g, 0, n - 1).value;
  ASSERT_TRUE(result.achieved_alpha.has_value());
  EXPECT_GE(*result.achieved_alpha, 1.0);
  EXPECT_LE(*result.achieved_alpha, 1.0 + 32.0 * 0.05 * std::log2(static_cast<double>(n)) + 1e-9);
  EXPECT_LE(result.cut_value, *result.achieved_alpha * maxflow * (1.0 + 1e-6));
  EXPECT_EQ(result.cut_value, static_cast<double>(undirected_cut_value(g, result.cut.mask())));
  EXPECT_EQ(result.contraction_violations, 0);
}

TEST_P(DriverFuzz, PotentialContractsAndSaturationIsMonotone) {
  Rng rng(derive_seed(12000, GetParam()));
  const auto n = static_cast<Vertex>(rng.uniform_int(4, 40));
  const CapacitatedGraph g = random_connected_graph(n, static_cast<EdgeId>(rng.uniform_int(n - 1, 4 * n)), 100,
                                                    rng.next());
  const double eps = 0.05;
  const std::string descriptor = n <= 12 ? "exhaustive" : "multitree:8";
  const CutMatrix r = build_approximator(g, descriptor, rng.next(), 64);
  const std::int64_t budget = default_solver_budget(r, eps);
  const double eta = g.tolerance();

  IterationState state = make_state(g, VertexCut(n, std::vector<Vertex>{0}, 0, n - 1),
                                    FlowAssignment(g.arc_count()), eps);
  const int rounds = round_limit(g, eps);
  for (int round = 0; round < rounds && state.potential >= 4.0 * eps; ++round) {
    const StepResult step = iterate_once(g, state, eps, r, budget);
    ASSERT_NE(step.branch, Branch::Exhausted);
    EXPECT_LE(step.next.potential, 0.75 * state.potential + eta) << "round " << round;
    EXPECT_NEAR(step.next.potential, directed_cut_value(working_residual(g, step.next), step.next.cut), 1e-9);
    EXPECT_TRUE(is_feasible(bidirected_view(g), step.next.flow));
    if (step.branch == Branch::Flow) {
      EXPECT_EQ(step.next.cut, state.cut);
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (state.mask.removed(e)) EXPECT_TRUE(step.next.mask.removed(e)) << "edge " << e;
      }
    } else {
      // Cut branch: the new side is measured against the old residual.
      const ResidualView before = working_residual(g, state);
      const VertexSet side(step.next.cut.mask().begin(), step.next.cut.mask().end());
      EXPECT_LE(brute_directed_cut(before, side), 0.75 * state.potential + eta);
      EXPECT_EQ(step.next.flow.values().size(), state.flow.values().size());
    }
    state = step.next;
  }
  EXPECT_LT(state.potential, 4.0 * eps);
  // Once the potential is below 4 eps every cut arc is saturated.
  EXPECT_TRUE(state.unsaturated.empty());
  for (ArcId a : outgoing_arcs(g, state.cut.mask())) {
    EXPECT_GE(state.flow[a], (1.0 - 4.0 * eps) * static_cast<double>(g.capacity(a)) - eta);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, DriverFuzz, ::testing::Range(0, 50));

}  // namespace
}  // namespace faircut
