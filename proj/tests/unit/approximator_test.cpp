#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "brute_force.hpp"
#include "faircut/approximator.hpp"
#include "faircut/errors.hpp"
#include "faircut/generators.hpp"
#include "faircut/oracles.hpp"
#include "faircut/random.hpp"

namespace faircut {
namespace {

using testing::brute_undirected_cut;
using testing::random_demand;
using testing::random_half_flow;

std::vector<Vertex> row_vector(const CutMatrix& r, std::size_t i) {
  const auto span = r.row(i);
  return {span.begin(), span.end()};
}

// A row and its complement describe the same cut; normalize to the side
// holding vertex 0.
std::set<std::vector<Vertex>> cut_family(const CutMatrix& r) {
  std::set<std::vector<Vertex>> out;
  const Vertex n = r.vertex_count();
  for (std::size_t i = 0; i < r.row_count(); ++i) {
    std::vector<Vertex> side = row_vector(r, i);
    if (!std::binary_search(side.begin(), side.end(), 0)) {
      std::vector<Vertex> other;
      for (Vertex v = 0; v < n; ++v) {
        if (!std::binary_search(side.begin(), side.end(), v)) other.push_back(v);
      }
      side = std::move(other);
    }
    out.insert(side);
  }
  return out;
}

CapacitatedGraph small_random(Rng& rng, Vertex lo, Vertex hi) {
  const auto n = static_cast<Vertex>(rng.uniform_int(lo, hi));
  return random_connected_graph(n, static_cast<EdgeId>(rng.uniform_int(n - 1, 3 * n)), 30, rng.next());
}

TEST(CutMatrixApply, Examples) {
  const CapacitatedGraph edge(2, std::vector<Edge>{{0, 1, 4}});
  const CutMatrix r = CutMatrix::from_rows(edge, {{0}});
  EXPECT_EQ(r.apply(Demand(2)), (std::vector<double>{0.0}));
  const std::vector<double> out = r.apply(Demand::st(2, 0, 1, 2.0));
  ASSERT_EQ(out.size(), 1U);
  EXPECT_DOUBLE_EQ(out[0], 0.5);
}

TEST(CutMatrix, RowsCarryExactReciprocalWeights) {
  const CapacitatedGraph g(3, std::vector<Edge>{{0, 1, 2}, {1, 2, 5}});
  const CutMatrix r = CutMatrix::from_rows(g, {{0}, {0, 1}, {1}});
  EXPECT_EQ(r.weight(0), 1.0 / 2.0);
  EXPECT_EQ(r.weight(1), 1.0 / 5.0);
  EXPECT_EQ(r.weight(2), 1.0 / 7.0);
  EXPECT_EQ(std::vector<std::uint32_t>(r.rows_containing(1).begin(), r.rows_containing(1).end()),
            (std::vector<std::uint32_t>{1, 2}));
}

TEST(CutMatrix, RejectsImproperRows) {
  const CapacitatedGraph g(3, std::vector<Edge>{{0, 1, 2}, {1, 2, 5}});
  EXPECT_THROW(CutMatrix::from_rows(g, {{}}), std::invalid_argument);
  EXPECT_THROW(CutMatrix::from_rows(g, {{0, 1, 2}}), std::invalid_argument);
  EXPECT_THROW(CutMatrix::from_rows(g, {{3}}), std::invalid_argument);
  const CapacitatedGraph split(4, std::vector<Edge>{{0, 1, 1}, {2, 3, 1}});
  EXPECT_THROW(CutMatrix::from_rows(split, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(CutMatrix::from_weighted_rows(3, {{0}}, {0.0}), std::invalid_argument);
  EXPECT_THROW(CutMatrix::from_weighted_rows(3, {{0}}, {1.0, 2.0}), std::invalid_argument);
}

TEST(CutMatrix, TransposeIsTheAdjoint) {
  Rng rng(11);
  const CapacitatedGraph g = small_random(rng, 6, 12);
  const CutMatrix r = build_multi_tree(g, 4, 3);
  std::vector<double> x(g.vertex_count()), y(r.row_count()), rx(r.row_count()), rty(g.vertex_count());
  for (double& v : x) v = rng.unit() - 0.5;
  for (double& v : y) v = rng.unit() - 0.5;
  r.apply(x, rx);
  r.apply_transpose(y, rty);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) lhs += y[i] * rx[i];
  for (std::size_t v = 0; v < x.size(); ++v) rhs += x[v] * rty[v];
  EXPECT_NEAR(lhs, rhs, 1e-12);
}

TEST(BuildExhaustive, RowCounts) {
  EXPECT_EQ(build_exhaustive(CapacitatedGraph(2, std::vector<Edge>{{0, 1, 1}})).row_count(), 1U);
  const CapacitatedGraph four(4, std::vector<Edge>{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  const CutMatrix r = build_exhaustive(four);
  EXPECT_EQ(r.row_count(), 7U);
  ASSERT_TRUE(r.alpha().has_value());
  EXPECT_EQ(*r.alpha(), 1.0);
  EXPECT_TRUE(r.exact());
}

TEST(BuildExhaustive, TriangleMatchesOpt) {
  const CapacitatedGraph tri(3, std::vector<Edge>{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  EXPECT_DOUBLE_EQ(build_exhaustive(tri).congestion_estimate(Demand::st(3, 0, 2, 1.0)), 0.5);
}

TEST(BuildExhaustive, RejectsLargeGraphs) {
  EXPECT_THROW(build_exhaustive(path_graph(21, 3, 1)), std::invalid_argument);
}

TEST(BuildTree, PathRowsArePrefixCuts) {
  const CapacitatedGraph path = path_graph(6, 9, 4);
  const CutMatrix r = build_tree(path);
  std::set<std::vector<Vertex>> expected;
  for (Vertex k = 1; k < 6; ++k) {
    std::vector<Vertex> prefix;
    for (Vertex v = 0; v < k; ++v) prefix.push_back(v);
    expected.insert(prefix);
  }
  EXPECT_EQ(r.row_count(), 5U);
  EXPECT_EQ(cut_family(r), expected);
}

TEST(BuildTree, StarRowsAreLeafCuts) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < 6; ++v) edges.push_back({0, v, v});
  const CapacitatedGraph star(6, edges);
  const CutMatrix r = build_tree(star, 5);
  ASSERT_EQ(r.row_count(), 5U);
  std::set<std::vector<Vertex>> rows;
  for (std::size_t i = 0; i < r.row_count(); ++i) rows.insert(row_vector(r, i));
  EXPECT_EQ(rows, (std::set<std::vector<Vertex>>{{1}, {2}, {3}, {4}, {5}}));
}

TEST(BuildTree, DisconnectedGraphNamesStrandedVertices) {
  const CapacitatedGraph g(4, std::vector<Edge>{{0, 1, 1}, {2, 3, 1}});
  try {
    build_tree(g);
    FAIL() << "expected DisconnectedGraph";
  } catch (const DisconnectedGraph& e) {
    EXPECT_EQ(e.stranded(), (std::vector<Vertex>{2, 3}));
  }
}

TEST(BuildMultiTree, SingleTreeMatchesBuildTree) {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const CapacitatedGraph g = small_random(rng, 4, 30);
    const std::uint64_t seed = rng.next();
    const CutMatrix one = build_multi_tree(g, 1, seed);
    const CutMatrix tree = build_tree(g, seed);
    ASSERT_EQ(one.row_count(), tree.row_count());
    for (std::size_t i = 0; i < one.row_count(); ++i) {
      EXPECT_EQ(row_vector(one, i), row_vector(tree, i));
      EXPECT_EQ(one.weight(i), tree.weight(i));
    }
  }
}

TEST(BuildMultiTree, RowCountAndDeduplication) {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const CapacitatedGraph g = small_random(rng, 4, 30);
    const int k = static_cast<int>(rng.uniform_int(1, 8));
    const CutMatrix r = build_multi_tree(g, k, rng.next());
    EXPECT_LE(r.row_count(), static_cast<std::size_t>(k) * static_cast<std::size_t>(g.vertex_count() - 1));
    std::set<std::vector<Vertex>> distinct;
    for (std::size_t i = 0; i < r.row_count(); ++i) distinct.insert(row_vector(r, i));
    EXPECT_EQ(distinct.size(), r.row_count());
  }
  EXPECT_THROW(build_multi_tree(path_graph(4, 2, 1), 0, 1), std::invalid_argument);
}

TEST(MeasureAlpha, ExhaustiveIsExactlyOne) {
  Rng rng(14);
  const CapacitatedGraph g = small_random(rng, 5, 9);
  EXPECT_EQ(measure_alpha(build_exhaustive(g), g, 50, 1), 1.0);
}

TEST(MeasureAlpha, TreeOnCycleWithHeavyChordExceedsOne) {
  // Cycle 0..7 with unit edges and a heavy chord 0-4. The maximum spanning
  // tree keeps the chord, so its cuts miss the cycle edge it drops.
  std::vector<Edge> edges;
  for (Vertex v = 0; v < 8; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % 8), 1});
  edges.push_back({0, 4, 50});
  const CapacitatedGraph g(8, edges);
  EXPECT_GT(measure_alpha(build_tree(g), g, 200, 2), 1.0);
}

TEST(MeasureAlpha, MoreTreesDoNotHurt) {
  Rng rng(15);
  for (int trial = 0; trial < 5; ++trial) {
    const CapacitatedGraph g = small_random(rng, 8, 12);
    const std::uint64_t seed = rng.next();
    const double one = measure_alpha(build_multi_tree(g, 1, seed), g, 100, 77);
    const double eight = measure_alpha(build_multi_tree(g, 8, seed), g, 100, 77);
    EXPECT_LE(eight, one * (1.0 + 1e-12));
  }
}

TEST(CalibrateAlpha, PadsTheMeasurement) {
  Rng rng(16);
  const CapacitatedGraph g = small_random(rng, 6, 10);
  CutMatrix r = build_tree(g, 4);
  const double measured = measure_alpha(r, g, 40, 9);
  EXPECT_DOUBLE_EQ(calibrate_alpha(r, g, 40, 9), 2.0 * measured);
  EXPECT_DOUBLE_EQ(*r.alpha(), 2.0 * measured);
  CutMatrix exact = build_exhaustive(g);
  EXPECT_EQ(calibrate_alpha(exact, g, 40, 9), 1.0);
}

TEST(CutMatrixJson, RoundTrip) {
  Rng rng(17);
  const CapacitatedGraph g = small_random(rng, 5, 15);
  CutMatrix r = build_multi_tree(g, 3, 8);
  r.set_alpha(2.5);
  const std::string text = r.to_json();
  const CutMatrix back = CutMatrix::from_json(g, text);
  ASSERT_EQ(back.row_count(), r.row_count());
  for (std::size_t i = 0; i < r.row_count(); ++i) {
    EXPECT_EQ(row_vector(back, i), row_vector(r, i));
    EXPECT_EQ(back.weight(i), r.weight(i));
  }
  EXPECT_EQ(back.alpha(), r.alpha());
  EXPECT_EQ(back.descriptor(), r.descriptor());
  EXPECT_EQ(back.to_json(), text);
}

class ApproximatorFuzz : public ::testing::TestWithParam<int> {};

TEST_P(ApproximatorFuzz, LowerBoundAndExhaustiveEquivalence) {
  Rng rng(derive_seed(8000, GetParam()));
  const CapacitatedGraph g = small_random(rng, 3, 12);
  const CutMatrix exhaustive = build_exhaustive(g);
  const CutMatrix tree = build_tree(g, rng.next());
  const CutMatrix multi = build_multi_tree(g, 8, rng.next());
  // 25 instances x 40 demands = 1000 demands overall.
  for (int i = 0; i < 40; ++i) {
    const Demand d = random_demand(rng, g.vertex_count(), static_cast<int>(rng.uniform_int(2, g.vertex_count())));
    const double opt = min_congestion_routing(g, d).opt;
    const double slack = 1e-9 * std::max(1.0, opt);
    EXPECT_LE(tree.congestion_estimate(d), opt + slack);
    EXPECT_LE(multi.congestion_estimate(d), opt + slack);
    EXPECT_NEAR(exhaustive.congestion_estimate(d), opt, slack);
  }
}

TEST_P(ApproximatorFuzz, OperatorRowNorms) {
  Rng rng(derive_seed(9000, GetParam()));
  const CapacitatedGraph g = small_random(rng, 3, 30);
  const CutMatrix r = build_multi_tree(g, 4, rng.next());

  for (double norm : operator_row_norms(r, bidirected_view(g))) EXPECT_NEAR(norm, 2.0, 1e-12);

  for (int k = 0; k < 4; ++k) {
    const ResidualView residual = residual_view(g, random_half_flow(rng, g));
    for (double norm : operator_row_norms(r, residual)) EXPECT_LE(norm, 4.0 + 1e-12);

    SubgraphMask mask(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (rng.uniform_int(0, 2) == 0) mask.remove(e);
    }
    for (double norm : operator_row_norms(r, masked_view(g, mask))) EXPECT_LE(norm, 2.0 + 1e-12);
  }

  // Row norms recomputed from the cut definition.
  const BidirectedView view = bidirected_view(g);
  const std::vector<double> norms = operator_row_norms(r, view);
  for (std::size_t i = 0; i < r.row_count(); ++i) {
    VertexSet side(g.vertex_count(), 0);
    for (Vertex v : r.row(i)) side[v] = 1;
    EXPECT_NEAR(norms[i], 2.0 * r.weight(i) * brute_undirected_cut(g, side), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, ApproximatorFuzz, ::testing::Range(0, 25));

}  // namespace
}  // namespace faircut
