#include "faircut/flow_or_cut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "faircut/errors.hpp"

namespace faircut {

std::int64_t default_solver_budget(const CutMatrix& r, double eps) {
  const double alpha = r.alpha().value_or(1.0);
  const double rows = static_cast<double>(std::max<std::size_t>(r.row_count(), 1));
  const double quarter = eps / 4.0;
  const double bound = alpha * alpha * std::log(2.0 * rows + 2.0) / (quarter * quarter);
  return static_cast<std::int64_t>(std::clamp(bound, 1e3, 2e5));
}

FlowOrCut flow_or_cut(const CapacitatedGraph& g, const ArcCapacityView& residual, Vertex s, Vertex t,
                      double tau, double eps, const CutMatrix& r, std::int64_t budget,
                      const FlowOrCutOptions& options) {
  const Vertex n = g.vertex_count();
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  if (s < 0 || t < 0 || s >= n || t >= n || s == t) {
    throw std::invalid_argument("s and t must be distinct vertices");
  }
  if (!r.alpha()) throw std::invalid_argument("approximator alpha is not calibrated");

  const Demand d = Demand::st(n, s, t, tau);
  const ReducedProblem problem = reduce(g, residual, d, r, options.guard);
  // Solve to eps/4 so that the leftover demand meets eps after the R' = R/4
  // scaling is undone.
  const double target = (eps / 4.0) / *r.alpha();
  SolverObserver observer;
  if (options.observer) {
    observer = [&](const SolverProgress& progress) {
      SolverProgress scaled = progress;
      scaled.violation = progress.violation / ReducedProblem::kRowScale;
      const auto cut = best_separating_prefix(residual, progress.potential, s, t);
      scaled.best_sweep_cut = cut ? cut->capacity : std::numeric_limits<double>::infinity();
      options.observer(scaled);
    };
  }
  SaddleOutcome outcome = saddle_solve(problem, target, budget, observer);

  if (auto* primal = std::get_if<PrimalSolution>(&outcome)) {
    return FlowExit{FlowAssignment::from_congestion(residual, primal->congestion),
                    primal->violation / ReducedProblem::kRowScale, primal->iterations};
  }
  if (auto* dual = std::get_if<DualSolution>(&outcome)) {
    const auto phi = dual_to_potential(dual->witness, problem);
    ThresholdCut cut = threshold_cut(residual, phi, d);
    if (!(cut.capacity < tau)) throw InvariantViolation("threshold cut is not below tau");
    return CutExit{VertexCut(std::move(cut.side), s, t), cut.capacity, dual->iterations, true};
  }

  // Budget expired: the best dual potential may still sweep to a cut below tau.
  auto& exhausted = std::get<SaddleExhausted>(outcome);
  std::vector<double> phi(n, 0.0);
  problem.apply_rows_transpose(exhausted.best_dual.signed_weights(), phi);
  for (double& x : phi) x = -x;
  if (auto cut = best_separating_prefix(residual, phi, s, t); cut && cut->capacity < tau) {
    return CutExit{VertexCut(std::move(cut->side), s, t), cut->capacity, exhausted.iterations, false};
  }
  return ExhaustedExit{exhausted.iterations, exhausted.best_violation / ReducedProblem::kRowScale};
}

}  // namespace faircut
