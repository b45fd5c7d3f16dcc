#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "faircut/approximator.hpp"
#include "faircut/cut.hpp"
#include "faircut/flow.hpp"
#include "faircut/graph.hpp"

namespace faircut {

// The single-commodity problem on a residual graph G' in the two-commodity
// stochastic form: X = [f, f_empty] with f + f_empty = 1 arcwise, operator
// A = D_{G'} C_{G'} applied arc by arc, B = [d, d_empty] with
// d_empty = A 1 - d, and rows R' = R / 4 stacked with their negations.
//
// The problem refers to the graph, view and matrices it was built from; they
// must outlive it.
class ReducedProblem {
 public:
  static constexpr double kRowScale = 0.25;

  ReducedProblem(const CapacitatedGraph& g, const ArcCapacityView& residual, Demand demand,
                 std::vector<const CutMatrix*> row_blocks);

  const CapacitatedGraph& graph() const { return *graph_; }
  const ArcCapacityView& residual() const { return *residual_; }
  const Demand& demand() const { return demand_; }
  const Demand& empty_demand() const { return empty_demand_; }
  std::size_t row_count() const { return row_count_; }
  Vertex vertex_count() const { return graph_->vertex_count(); }

  // A f for a congestion vector f: divergence of the flow c'(a) * f(a).
  void apply_operator(std::span<const double> congestion, std::span<double> out) const;
  // R' x over the stacked row blocks.
  void apply_rows(std::span<const double> x, std::span<double> out) const;
  // R'^T y.
  void apply_rows_transpose(std::span<const double> y, std::span<double> out) const;

  // max_r |(R'(A f - d))_r|; the f_empty column gives the same magnitudes
  // with opposite sign.
  double primal_violation(std::span<const double> congestion) const;

  // Row l1 norms of R' A (each is <= 1 for a
  // residual of the approximator's graph).
  std::vector<double> operator_row_norms() const;

 private:
  const CapacitatedGraph* graph_;
  const ArcCapacityView* residual_;
  Demand demand_;
  Demand empty_demand_;
  std::vector<const CutMatrix*> blocks_;
  std::vector<std::size_t> block_offset_;
  std::size_t row_count_ = 0;
};

// R is the approximator for G; `guard` holds optional extra lower-bound rows
// (the driver passes the current cut). Throws std::invalid_argument on
// mismatched sizes or a row with non-finite weight.
ReducedProblem reduce(const CapacitatedGraph& g, const ArcCapacityView& residual, const Demand& d,
                      const CutMatrix& r, const CutMatrix* guard = nullptr);

// Nonnegative dual Y = [y1, y2] with y_i = [w_i; z_i] over the duplicated
// (+/-) rows.
struct DualWitness {
  std::vector<double> w1, z1, w2, z2;

  // w1 - w2 - z1 + z2: tr(Y(A2 X - B2)) = signed . R'(A f - d).
  std::vector<double> signed_weights() const;
  bool is_zero() const;
};

// tr(Y (A2 X - B2)) for X = [f, 1 - f].
double dual_trace(const ReducedProblem& p, const DualWitness& y, std::span<const double> congestion);
// min over X in the row-simplex set of tr(Y (A2 X - B2)); > 0 certifies
// infeasibility.
double dual_worst_case(const ReducedProblem& p, const DualWitness& y);

struct PrimalSolution {
  std::vector<double> congestion;  // f; f_empty = 1 - f
  double violation = 0.0;          // max_r |(R'(A f - d))_r|
  std::int64_t iterations = 0;
};

struct DualSolution {
  DualWitness witness;
  double margin = 0.0;  // dual_worst_case(p, witness) > 0
  std::int64_t iterations = 0;
};

struct SaddleExhausted {
  std::vector<double> best_congestion;
  double best_violation = 0.0;
  DualWitness best_dual;
  double best_dual_margin = 0.0;
  std::int64_t iterations = 0;
};

using SaddleOutcome = std::variant<PrimalSolution, DualSolution, SaddleExhausted>;

struct SolverProgress {
  std::int64_t iteration = 0;
  double violation = 0.0;             // R' units from saddle_solve, R units from flow_or_cut
  std::span<const double> potential;  // vertex potential of the current dual weights
  double best_sweep_cut = 0.0;        // flow_or_cut only: cheapest (s,t) prefix of the sweep
};

using SolverObserver = std::function<void(const SolverProgress&)>;

// Either X with every row of R'(AX - B) within eps_over_alpha in l_inf, or a
// dual Y verified by dual_worst_case > 0, or Exhausted after `budget` gradient
// evaluations. Multiplicative weights over the 2*rows stacked constraints
// (a softmax of the violations) drive an accelerated projected-gradient
// update of f on the box, with the softmax temperature lowered in stages
// until it matches eps_over_alpha.
SaddleOutcome saddle_solve(const ReducedProblem& p, double eps_over_alpha, std::int64_t budget,
                           const SolverObserver& observer = {});

// Vertex potential phi with phi^T (d - A f_phi) > 0, taken from branch
// (w2 - w1), then (z1 - z2), then their sum (which always works for a valid
// witness). Throws InvariantViolation if none qualifies.
std::vector<double> dual_to_potential(const DualWitness& y, const ReducedProblem& p);

// phi^T (d - A f_phi), where f_phi saturates every arc running downhill.
double threshold_precondition(const ArcCapacityView& view, std::span<const double> phi,
                              const Demand& d);

struct ThresholdCut {
  VertexSet side;
  double demand_inside = 0.0;  // Delta(S)
  double capacity = 0.0;       // c(out-arcs of S)
};

// Sweeps prefixes of the vertices sorted by decreasing phi (ties by id) and
// returns the first S with Delta(S) > c(out-arcs of S). Throws
// PreconditionViolation if the precondition value is not positive or no
// prefix qualifies.
ThresholdCut threshold_cut(const ArcCapacityView& view, std::span<const double> phi, const Demand& d);

// Cheapest (s,t)-separating prefix of the same sweep, without any
// precondition; nullopt if no prefix separates s from t.
std::optional<ThresholdCut> best_separating_prefix(const ArcCapacityView& view,
                                                   std::span<const double> phi, Vertex s, Vertex t);

struct FlowExit {
  FlowAssignment flow;       // feasible in G'
  double violation = 0.0;    // ||R (A f - d)||_inf, unscaled rows
  std::int64_t iterations = 0;
};

struct CutExit {
  VertexCut cut;
  double value = 0.0;  // c_{G'}(out-arcs of S) < tau
  std::int64_t iterations = 0;
  bool from_dual = true;  // false when found by the budget-expiry sweep
};

struct ExhaustedExit {
  std::int64_t iterations = 0;
  double best_violation = 0.0;
};

using FlowOrCut = std::variant<FlowExit, CutExit, ExhaustedExit>;

struct FlowOrCutOptions {
  const CutMatrix* guard = nullptr;  // extra lower-bound rows
  SolverObserver observer;
};

// Either an (s,t)-cut of G' with value < tau, or a feasible flow in G' whose
// leftover demand tau (1_s - 1_t) - div(flow) satisfies
// ||R (leftover)||_inf <= eps / alpha, hence routes in G with congestion eps.
// eps is shrunk by 4 internally and R must carry a calibrated alpha.
FlowOrCut flow_or_cut(const CapacitatedGraph& g, const ArcCapacityView& residual, Vertex s, Vertex t,
                      double tau, double eps, const CutMatrix& r, std::int64_t budget,
                      const FlowOrCutOptions& options = {});

// Default iteration budget for one flow_or_cut call.
std::int64_t default_solver_budget(const CutMatrix& r, double eps);

}  // namespace faircut
