#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "faircut/approximator.hpp"
#include "faircut/cut.hpp"
#include "faircut/flow.hpp"
#include "faircut/flow_or_cut.hpp"
#include "faircut/graph.hpp"

namespace faircut {

// (S_i, f_i) plus the quantities derived from them: the unsaturated out-arcs
// U_i, the mask removing the other edges of the cut, and the potential
// c_{G'_i}(out-arcs of S_i).
struct IterationState {
  int index = 1;
  VertexCut cut;
  FlowAssignment flow;  // cumulative, antiparallel amounts cancelled
  std::vector<ArcId> unsaturated;
  SubgraphMask mask;
  double potential = 0.0;
};

// Out-arcs (u,v) of S with f(u,v) <= (1 - 4 eps) c(u,v), compared with
// tolerance eta; the boundary is inclusive.
std::vector<ArcId> unsaturated_arcs(const CapacitatedGraph& g, const FlowAssignment& f,
                                    std::span<const std::uint8_t> in_set, double eps);

IterationState make_state(const CapacitatedGraph& g, VertexCut cut, FlowAssignment flow, double eps,
                          int index = 1);

// G'_i: residual of f_i on G_i.
ResidualView working_residual(const CapacitatedGraph& g, const IterationState& state);

// Whichever of S u X and S n X has the smaller boundary in `view` (the
// intersection on ties); both are (s,t)-cuts when S and X are.
VertexCut uncross(const ArcCapacityView& view, const VertexCut& s, const VertexCut& x);

enum class Branch { Flow, Cut, Exhausted };

const char* branch_name(Branch b);

struct StepResult {
  IterationState next;
  Branch branch = Branch::Exhausted;
  double primal_gap = 0.0;  // ||R(A f - d)||_inf for flow exits, 0 otherwise
  std::int64_t solver_iterations = 0;
};

// One round: tau = potential / 2, call flow_or_cut on G'_i, then either add
// the flow (cancelling antiparallel amounts) or uncross the cut with S_i,
// keeping whichever of the union and intersection has the smaller G'_i
// boundary (the intersection on ties). An Exhausted call returns the state
// unchanged.
StepResult iterate_once(const CapacitatedGraph& g, const IterationState& state, double eps,
                        const CutMatrix& r, std::int64_t budget, const SolverObserver& observer = {});

struct TraceRow {
  int index = 0;
  double potential = 0.0;  // before the round
  Branch branch = Branch::Flow;
  double primal_gap = 0.0;
  double next_potential = 0.0;
  bool contraction_ok = true;  // next <= 0.75 * potential + eta
  std::int64_t solver_iterations = 0;
};

struct FairCutOptions {
  double epsilon = 0.05;
  std::string approximator = "multitree:8";
  std::uint64_t seed = 0;
  std::optional<int> max_iterations;       // default: round_limit()
  std::optional<std::int64_t> budget;      // default: default_solver_budget()
  bool certify = true;                     // run min_fair_alpha on the result
  int alpha_trials = 64;                   // demands sampled to calibrate alpha
#ifdef NDEBUG
  bool strict_contraction = false;
#else
  bool strict_contraction = true;          // throw InvariantViolation on a failed contraction
#endif
  SolverObserver observer;
};

struct FairCutResult {
  VertexCut cut;
  std::optional<double> achieved_alpha;
  std::vector<TraceRow> trace;
  FlowAssignment final_flow;
  double final_potential = 0.0;
  double cut_value = 0.0;  // c_G(boundary of S)
  int contraction_violations = 0;
  std::string approximator;
  std::size_t approximator_rows = 0;
  double approximator_alpha = 1.0;
};

// Raised when flow_or_cut exhausts its budget twice in a row (the second time
// with 4x the budget).
class SolverExhausted : public std::runtime_error {
 public:
  SolverExhausted(const std::string& what, std::vector<TraceRow> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<TraceRow>& trace() const { return trace_; }

 private:
  std::vector<TraceRow> trace_;
};

// ceil(log_{4/3}(n^2 W 16 / eps))
int round_limit(const CapacitatedGraph& g, double eps);

// Builds and calibrates "exhaustive", "tree" or "multitree:K". Throws
// std::invalid_argument on an unknown descriptor.
CutMatrix build_approximator(const CapacitatedGraph& g, const std::string& descriptor,
                             std::uint64_t seed, int alpha_trials);

// Starts from S = {s} and the empty flow and runs at most round_limit rounds,
// stopping once the potential drops below 4 eps.
FairCutResult fair_cut(const CapacitatedGraph& g, Vertex s, Vertex t, const FairCutOptions& options);
// Same, with a prebuilt calibrated approximator.
FairCutResult fair_cut(const CapacitatedGraph& g, Vertex s, Vertex t, const CutMatrix& r,
                       const FairCutOptions& options);

}  // namespace faircut
