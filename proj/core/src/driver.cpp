#include "faircut/driver.hpp"

#include <cmath>
#include <string>

#include "faircut/errors.hpp"
#include "faircut/oracles.hpp"
#include "faircut/random.hpp"

namespace faircut {

std::vector<ArcId> unsaturated_arcs(const CapacitatedGraph& g, const FlowAssignment& f,
                                    std::span<const std::uint8_t> in_set, double eps) {
  std::vector<ArcId> out;
  const double eta = g.tolerance();
  for (ArcId a : outgoing_arcs(g, in_set)) {
    if (f[a] <= (1.0 - 4.0 * eps) * static_cast<double>(g.capacity(a)) + eta) out.push_back(a);
  }
  return out;
}

IterationState make_state(const CapacitatedGraph& g, VertexCut cut, FlowAssignment flow, double eps,
                          int index) {
  IterationState state{index, std::move(cut), std::move(flow), {}, SubgraphMask(g.edge_count()), 0.0};
  state.unsaturated = unsaturated_arcs(g, state.flow, state.cut.mask(), eps);
  std::vector<std::uint8_t> keep(g.edge_count(), 0);
  for (ArcId a : state.unsaturated) keep[edge_of(a)] = 1;
  for (ArcId a : outgoing_arcs(g, state.cut.mask())) {
    if (!keep[edge_of(a)]) state.mask.remove(edge_of(a));
  }
  state.potential = directed_cut_value(working_residual(g, state), state.cut);
  return state;
}

ResidualView working_residual(const CapacitatedGraph& g, const IterationState& state) {
  return residual_view(g, state.mask, state.flow);
}

VertexCut uncross(const ArcCapacityView& view, const VertexCut& s, const VertexCut& x) {
  const Vertex n = s.vertex_count();
  if (x.vertex_count() != n || x.source() != s.source() || x.sink() != s.sink()) {
    throw std::invalid_argument("uncrossing needs two cuts of the same (s,t) pair");
  }
  VertexSet joined(n), common(n);
  for (Vertex v = 0; v < n; ++v) {
    joined[v] = s.contains(v) || x.contains(v);
    common[v] = s.contains(v) && x.contains(v);
  }
  const double joined_value = directed_cut_value(view, joined);
  const double common_value = directed_cut_value(view, common);
  VertexSet chosen = common_value <= joined_value ? std::move(common) : std::move(joined);
  if (!chosen[s.source()] || chosen[s.sink()]) throw InvariantViolation("uncrossing produced an improper cut");
  return VertexCut(std::move(chosen), s.source(), s.sink());
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::Flow:
      return "flow";
    case Branch::Cut:
      return "cut";
    case Branch::Exhausted:
      return "exhausted";
  }
  return "unknown";
}

StepResult iterate_once(const CapacitatedGraph& g, const IterationState& state, double eps,
                        const CutMatrix& r, std::int64_t budget, const SolverObserver& observer) {
  const ResidualView residual = working_residual(g, state);
  const double tau = 0.5 * state.potential;
  const Vertex s = state.cut.source();
  const Vertex t = state.cut.sink();

  // Lower-bound row on S_i normalized by c_{G_i}: keeps the leftover demand
  // across S_i within eps * c_{G_i}(dS_i) on a flow exit.
  FlowOrCutOptions options;
  options.observer = observer;
  CutMatrix guard;
  const auto boundary = undirected_cut_value(g, state.mask, state.cut.mask());
  if (boundary > 0) {
    guard = CutMatrix::from_weighted_rows(g.vertex_count(), {state.cut.members()},
                                          {1.0 / static_cast<double>(boundary)}, "guard");
    options.guard = &guard;
  }

  const FlowOrCut outcome = flow_or_cut(g, residual, s, t, tau, eps, r, budget, options);
  StepResult step{state, Branch::Exhausted, 0.0, 0};
  if (const auto* flow = std::get_if<FlowExit>(&outcome)) {
    FlowAssignment next = cancel_antiparallel(add_flows(state.flow, flow->flow));
    step.next = make_state(g, state.cut, std::move(next), eps, state.index + 1);
    step.branch = Branch::Flow;
    step.primal_gap = flow->violation;
    step.solver_iterations = flow->iterations;
  } else if (const auto* cut = std::get_if<CutExit>(&outcome)) {
    VertexCut chosen = uncross(residual, state.cut, cut->cut);
    step.next = make_state(g, std::move(chosen), state.flow, eps, state.index + 1);
    step.branch = Branch::Cut;
    step.solver_iterations = cut->iterations;
  } else {
    step.solver_iterations = std::get<ExhaustedExit>(outcome).iterations;
  }
  return step;
}

int round_limit(const CapacitatedGraph& g, double eps) {
  const double n = g.vertex_count();
  const double w = static_cast<double>(g.max_capacity());
  return static_cast<int>(std::ceil(std::log(n * n * w * 16.0 / eps) / std::log(4.0 / 3.0)));
}

CutMatrix build_approximator(const CapacitatedGraph& g, const std::string& descriptor,
                             std::uint64_t seed, int alpha_trials) {
  CutMatrix r;
  if (descriptor == "exhaustive") {
    r = build_exhaustive(g);
  } else if (descriptor == "tree") {
    r = build_tree(g, seed);
  } else if (descriptor.rfind("multitree:", 0) == 0) {
    std::size_t used = 0;
    int count = 0;
    const std::string digits = descriptor.substr(10);
    try {
      count = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != digits.size() || count < 1) {
      throw std::invalid_argument("bad approximator descriptor: " + descriptor);
    }
    r = build_multi_tree(g, count, seed);
  } else {
    throw std::invalid_argument("unknown approximator: " + descriptor);
  }
  calibrate_alpha(r, g, alpha_trials, derive_seed(seed, 7));
  return r;
}

FairCutResult fair_cut(const CapacitatedGraph& g, Vertex s, Vertex t, const FairCutOptions& options) {
  require_connected(g);
  const CutMatrix r = build_approximator(g, options.approximator, options.seed, options.alpha_trials);
  return fair_cut(g, s, t, r, options);
}

FairCutResult fair_cut(const CapacitatedGraph& g, Vertex s, Vertex t, const CutMatrix& r,
                       const FairCutOptions& options) {
  const double eps = options.epsilon;
  if (!(eps > 0.0 && eps < 0.25)) throw std::invalid_argument("eps must lie in (0, 1/4)");
  const Vertex n = g.vertex_count();
  if (s < 0 || t < 0 || s >= n || t >= n || s == t) {
    throw std::invalid_argument("s and t must be distinct vertices");
  }
  require_connected(g);
  if (r.vertex_count() != n || !r.alpha()) {
    throw std::invalid_argument("approximator must be calibrated for this graph");
  }

  const int rounds = options.max_iterations.value_or(round_limit(g, eps));
  const std::int64_t budget = options.budget.value_or(default_solver_budget(r, eps));
  const double eta = g.tolerance();

  FairCutResult result{VertexCut(n, std::vector<Vertex>{s}, s, t), std::nullopt, {}, {}, 0.0, 0.0, 0,
                       r.descriptor(), r.row_count(), *r.alpha()};
  IterationState state = make_state(g, result.cut, FlowAssignment(g.arc_count()), eps);

  for (int round = 0; round < rounds && state.potential >= 4.0 * eps; ++round) {
    StepResult step = iterate_once(g, state, eps, r, budget, options.observer);
    if (step.branch == Branch::Exhausted) {
      const std::int64_t spent = step.solver_iterations;
      step = iterate_once(g, state, eps, r, 4 * budget, options.observer);
      step.solver_iterations += spent;
    }
    TraceRow row{state.index, state.potential, step.branch, step.primal_gap, step.next.potential, true,
                 step.solver_iterations};
    if (step.branch == Branch::Exhausted) {
      result.trace.push_back(row);
      throw SolverExhausted("flow_or_cut exhausted its budget twice at round " +
                                std::to_string(state.index) + " (potential " +
                                std::to_string(state.potential) + ")",
                            std::move(result.trace));
    }
    row.contraction_ok = step.next.potential <= 0.75 * state.potential + eta;
    result.trace.push_back(row);
    if (!row.contraction_ok) {
      ++result.contraction_violations;
      if (options.strict_contraction) {
        throw InvariantViolation("potential failed to contract by 0.75 at round " +
                                 std::to_string(state.index));
      }
    }
    state = std::move(step.next);
  }

  result.cut = state.cut;
  result.final_flow = state.flow;
  result.final_potential = state.potential;
  result.cut_value = static_cast<double>(undirected_cut_value(g, result.cut.mask()));
  if (options.certify) result.achieved_alpha = min_fair_alpha(g, result.cut);
  return result;
}

}  // namespace faircut
