#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "faircut/errors.hpp"
#include "faircut/flow_or_cut.hpp"

namespace faircut {

ReducedProblem::ReducedProblem(const CapacitatedGraph& g, const ArcCapacityView& residual,
                               Demand demand, std::vector<const CutMatrix*> row_blocks)
    : graph_(&g), residual_(&residual), demand_(std::move(demand)), blocks_(std::move(row_blocks)) {
  if (&residual.graph() != &g) throw std::invalid_argument("residual view belongs to another graph");
  if (demand_.size() != g.vertex_count()) throw std::invalid_argument("demand size mismatch");
  if (blocks_.empty()) throw std::invalid_argument("reduced problem needs at least one row block");
  for (const CutMatrix* block : blocks_) {
    if (block == nullptr || block->vertex_count() != g.vertex_count()) {
      throw std::invalid_argument("approximator built for a different vertex count");
    }
    for (std::size_t r = 0; r < block->row_count(); ++r) {
      if (!std::isfinite(block->weight(r)) || !(block->weight(r) > 0.0)) {
        throw std::invalid_argument("approximator row with zero cut capacity");
      }
    }
    block_offset_.push_back(row_count_);
    row_count_ += block->row_count();
  }
  block_offset_.push_back(row_count_);

  // d_empty = A 1 - d, so that A(f + f_empty) = d + d_empty for any f.
  std::vector<double> ones(g.arc_count(), 1.0);
  std::vector<double> total(g.vertex_count(), 0.0);
  apply_operator(ones, total);
  empty_demand_ = Demand(std::move(total));
  empty_demand_ -= demand_;
}

void ReducedProblem::apply_operator(std::span<const double> congestion, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  const CapacitatedGraph& g = *graph_;
  const auto caps = residual_->capacities();
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const double amount = caps[a] * congestion[a];
    if (amount == 0.0) continue;
    out[g.tail(a)] += amount;
    out[g.head(a)] -= amount;
  }
}

void ReducedProblem::apply_rows(std::span<const double> x, std::span<double> out) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto slice = out.subspan(block_offset_[b], blocks_[b]->row_count());
    blocks_[b]->apply(x, slice);
    for (double& value : slice) value *= kRowScale;
  }
}

void ReducedProblem::apply_rows_transpose(std::span<const double> y, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> part(out.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    blocks_[b]->apply_transpose(y.subspan(block_offset_[b], blocks_[b]->row_count()), part);
    for (std::size_t v = 0; v < out.size(); ++v) out[v] += kRowScale * part[v];
  }
}

double ReducedProblem::primal_violation(std::span<const double> congestion) const {
  std::vector<double> div(vertex_count());
  apply_operator(congestion, div);
  for (Vertex v = 0; v < vertex_count(); ++v) div[v] -= demand_[v];
  std::vector<double> rows(row_count_);
  apply_rows(div, rows);
  double worst = 0.0;
  for (double x : rows) worst = std::max(worst, std::abs(x));
  return worst;
}

std::vector<double> ReducedProblem::operator_row_norms() const {
  std::vector<double> norms;
  norms.reserve(row_count_);
  for (const CutMatrix* block : blocks_) {
    for (double x : faircut::operator_row_norms(*block, *residual_)) norms.push_back(kRowScale * x);
  }
  return norms;
}

ReducedProblem reduce(const CapacitatedGraph& g, const ArcCapacityView& residual, const Demand& d,
                      const CutMatrix& r, const CutMatrix* guard) {
  std::vector<const CutMatrix*> blocks{&r};
  if (guard != nullptr && guard->row_count() > 0) blocks.push_back(guard);
  return ReducedProblem(g, residual, d, std::move(blocks));
}

std::vector<double> DualWitness::signed_weights() const {
  std::vector<double> out(w1.size());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = w1[r] - w2[r] - z1[r] + z2[r];
  return out;
}

bool DualWitness::is_zero() const {
  auto zero = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
  };
  return zero(w1) && zero(z1) && zero(w2) && zero(z2);
}

namespace {

void check_witness(const ReducedProblem& p, const DualWitness& y) {
  const std::size_t k = p.row_count();
  if (y.w1.size() != k || y.z1.size() != k || y.w2.size() != k || y.z2.size() != k) {
    throw std::invalid_argument("dual witness size mismatch");
  }
  for (const auto* part : {&y.w1, &y.z1, &y.w2, &y.z2}) {
    for (double x : *part) {
      if (!(x >= 0.0)) throw std::invalid_argument("dual witness must be nonnegative");
    }
  }
}

// R'^T u
std::vector<double> pull_back(const ReducedProblem& p, std::span<const double> u) {
  std::vector<double> out(p.vertex_count());
  p.apply_rows_transpose(u, out);
  return out;
}

}  // namespace

double dual_trace(const ReducedProblem& p, const DualWitness& y, std::span<const double> congestion) {
  check_witness(p, y);
  std::vector<double> div(p.vertex_count());
  p.apply_operator(congestion, div);
  for (Vertex v = 0; v < p.vertex_count(); ++v) div[v] -= p.demand()[v];
  const auto psi = pull_back(p, y.signed_weights());
  double total = 0.0;
  for (Vertex v = 0; v < p.vertex_count(); ++v) total += psi[v] * div[v];
  return total;
}

double dual_worst_case(const ReducedProblem& p, const DualWitness& y) {
  check_witness(p, y);
  const auto psi = pull_back(p, y.signed_weights());
  // tr(Y(A2 X - B2)) = psi^T (A f - d); minimized arcwise over f in [0,1].
  std::vector<double> phi(psi.size());
  for (std::size_t v = 0; v < psi.size(); ++v) phi[v] = -psi[v];
  return threshold_precondition(p.residual(), phi, p.demand());
}

std::vector<double> dual_to_potential(const DualWitness& y, const ReducedProblem& p) {
  check_witness(p, y);
  const std::size_t k = p.row_count();
  std::vector<double> branch_w(k), branch_z(k);
  for (std::size_t r = 0; r < k; ++r) {
    branch_w[r] = y.w2[r] - y.w1[r];
    branch_z[r] = y.z1[r] - y.z2[r];
  }
  auto scale_of = [&](const std::vector<double>& phi) {
    double total = 0.0;
    for (Vertex v = 0; v < p.vertex_count(); ++v) total += std::abs(phi[v] * p.demand()[v]);
    const CapacitatedGraph& g = p.graph();
    for (ArcId a = 0; a < g.arc_count(); ++a) {
      total += p.residual().capacity(a) * std::abs(phi[g.tail(a)] - phi[g.head(a)]);
    }
    return total;
  };
  auto qualifies = [&](const std::vector<double>& phi) {
    const double value = threshold_precondition(p.residual(), phi, p.demand());
    return value > 1e-12 * scale_of(phi) && value > 0.0;
  };

  auto phi_w = pull_back(p, branch_w);
  if (qualifies(phi_w)) return phi_w;
  auto phi_z = pull_back(p, branch_z);
  if (qualifies(phi_z)) return phi_z;
  for (std::size_t v = 0; v < phi_w.size(); ++v) phi_w[v] += phi_z[v];
  if (qualifies(phi_w)) return phi_w;
  throw InvariantViolation("dual witness does not certify infeasibility");
}

}  // namespace faircut
