#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "faircut/flow_or_cut.hpp"

namespace faircut {
namespace {

// Work vectors over the arcs of G' with positive capacity; f on the other
// arcs is pinned at 0 since it cannot move A f.
class Workspace {
 public:
  explicit Workspace(const ReducedProblem& p) : p_(p) {
    const CapacitatedGraph& g = p.graph();
    for (ArcId a = 0; a < g.arc_count(); ++a) {
      const double c = p.residual().capacity(a);
      if (c <= 0.0) continue;
      arcs_.push_back(a);
      tail_.push_back(g.tail(a));
      head_.push_back(g.head(a));
      cap_.push_back(c);
    }
    div_.resize(p.vertex_count());
    psi_.resize(p.vertex_count());
    neg_psi_.resize(p.vertex_count());
  }

  std::size_t size() const { return arcs_.size(); }

  // out = R'(A f - d)
  void rows(const std::vector<double>& f, std::vector<double>& out) {
    for (Vertex v = 0; v < p_.vertex_count(); ++v) div_[v] = -p_.demand()[v];
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      const double amount = cap_[i] * f[i];
      div_[tail_[i]] += amount;
      div_[head_[i]] -= amount;
    }
    out.resize(p_.row_count());
    p_.apply_rows(div_, out);
  }

  // psi = R'^T y, grad_i = c_i (psi_tail - psi_head); returns the exact
  // minimum of y . R'(A f - d) over the box and its magnitude scale.
  std::pair<double, double> pull_back(const std::vector<double>& y, std::vector<double>& grad) {
    p_.apply_rows_transpose(y, psi_);
    double worst = 0.0;
    double scale = 0.0;
    for (Vertex v = 0; v < p_.vertex_count(); ++v) {
      worst -= psi_[v] * p_.demand()[v];
      scale += std::abs(psi_[v] * p_.demand()[v]);
    }
    grad.resize(arcs_.size());
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      grad[i] = cap_[i] * (psi_[tail_[i]] - psi_[head_[i]]);
      worst += std::min(0.0, grad[i]);
      scale += std::abs(grad[i]);
    }
    return {worst, scale};
  }

  std::span<const double> potential() {
    for (std::size_t v = 0; v < psi_.size(); ++v) neg_psi_[v] = -psi_[v];
    return neg_psi_;
  }

  std::vector<double> expand(const std::vector<double>& f) const {
    std::vector<double> full(p_.graph().arc_count(), 0.0);
    for (std::size_t i = 0; i < arcs_.size(); ++i) full[arcs_[i]] = f[i];
    return full;
  }

 private:
  const ReducedProblem& p_;
  std::vector<ArcId> arcs_;
  std::vector<Vertex> tail_, head_;
  std::vector<double> cap_;
  std::vector<double> div_, psi_, neg_psi_;
};

double max_abs(const std::vector<double>& g) {
  double worst = 0.0;
  for (double x : g) worst = std::max(worst, std::abs(x));
  return worst;
}

// Smoothed max over the 2K values +g, -g: (1/beta) log sum exp(beta * .).
double soft_max(const std::vector<double>& g, double beta) {
  const double top = max_abs(g);
  double total = 0.0;
  for (double x : g) total += std::exp(beta * (x - top)) + std::exp(beta * (-x - top));
  return top + std::log(total) / beta;
}

// Signed weights p+ - p- of the softmax distribution.
void soft_weights(const std::vector<double>& g, double beta, std::vector<double>& y) {
  const double top = max_abs(g);
  double total = 0.0;
  y.resize(g.size());
  for (std::size_t r = 0; r < g.size(); ++r) {
    const double plus = std::exp(beta * (g[r] - top));
    const double minus = std::exp(beta * (-g[r] - top));
    y[r] = plus - minus;
    total += plus + minus;
  }
  for (double& x : y) x /= total;
}

DualWitness witness_from(const std::vector<double>& y) {
  DualWitness w;
  w.w1.resize(y.size());
  w.z1.resize(y.size());
  w.w2.assign(y.size(), 0.0);
  w.z2.assign(y.size(), 0.0);
  for (std::size_t r = 0; r < y.size(); ++r) {
    w.w1[r] = std::max(0.0, y[r]);
    w.z1[r] = std::max(0.0, -y[r]);
  }
  return w;
}

}  // namespace

SaddleOutcome saddle_solve(const ReducedProblem& p, double eps_over_alpha, std::int64_t budget,
                           const SolverObserver& observer) {
  if (!(eps_over_alpha > 0.0 && eps_over_alpha < 1.0)) {
    throw std::invalid_argument("eps/alpha must lie in (0, 1)");
  }
  if (budget < 0) throw std::invalid_argument("solver budget must be nonnegative");

  Workspace ws(p);
  const std::size_t dim = ws.size();
  const double target = eps_over_alpha;
  const double log_rows = std::log(2.0 * static_cast<double>(p.row_count()));

  std::vector<double> x(dim, 0.0), z(dim, 0.0), next(dim), grad, gx, gz, gn, y;
  ws.rows(x, gx);
  double violation = max_abs(gx);

  SaddleExhausted exhausted;
  exhausted.best_congestion = ws.expand(x);
  exhausted.best_violation = violation;
  exhausted.best_dual = witness_from(std::vector<double>(p.row_count(), 0.0));
  exhausted.best_dual_margin = -std::numeric_limits<double>::infinity();
  if (budget == 0) return exhausted;
  if (violation <= target) return PrimalSolution{ws.expand(x), violation, 0};

  // Stage k smooths with error theta/4 and ends once max |g| <= theta.
  double theta = std::max(target, 0.5 * violation);
  double beta = 4.0 * log_rows / theta;
  double lipschitz = 1e-3 * beta;
  double momentum = 1.0;
  double phi_x = soft_max(gx, beta);
  gz = gx;

  for (std::int64_t iter = 1; iter <= budget; ++iter) {
    const double phi_z = soft_max(gz, beta);
    soft_weights(gz, beta, y);
    const auto [margin, scale] = ws.pull_back(y, grad);
    if (margin > 1e-12 * scale && margin > 0.0) {
      return DualSolution{witness_from(y), margin, iter};
    }
    if (margin > exhausted.best_dual_margin) {
      exhausted.best_dual_margin = margin;
      exhausted.best_dual = witness_from(y);
    }
    if (observer) observer({iter, violation, ws.potential(), 0.0});

    // Projected gradient step from z with backtracking on the local
    // quadratic model.
    double phi_n = 0.0;
    for (;;) {
      double linear = 0.0;
      double square = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        next[i] = std::clamp(z[i] - grad[i] / lipschitz, 0.0, 1.0);
        const double step = next[i] - z[i];
        linear += grad[i] * step;
        square += step * step;
      }
      ws.rows(next, gn);
      phi_n = soft_max(gn, beta);
      if (phi_n <= phi_z + linear + 0.5 * lipschitz * square + 1e-14 * std::abs(phi_z)) break;
      lipschitz *= 2.0;
    }
    const double next_violation = max_abs(gn);
    if (next_violation < exhausted.best_violation) {
      exhausted.best_violation = next_violation;
      exhausted.best_congestion = ws.expand(next);
    }
    if (next_violation <= target) return PrimalSolution{ws.expand(next), next_violation, iter};

    if (next_violation <= theta) {
      const double sharper = std::max(target, 0.5 * std::min(theta, next_violation));
      lipschitz *= theta / sharper;
      theta = sharper;
      beta = 4.0 * log_rows / theta;
      x = next;
      z = next;
      gx = gn;
      gz = gn;
      phi_x = soft_max(gx, beta);
      momentum = 1.0;
      violation = next_violation;
      continue;
    }

    if (phi_n > phi_x) {
      // Objective went up: drop the momentum and restart from the new point.
      momentum = 1.0;
      z = next;
      gz = gn;
    } else {
      const double grown = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      const double weight = (momentum - 1.0) / grown;
      for (std::size_t i = 0; i < dim; ++i) z[i] = next[i] + weight * (next[i] - x[i]);
      for (std::size_t r = 0; r < gz.size(); ++r) gz[r] = gn[r] + weight * (gn[r] - gx[r]);
      momentum = grown;
    }
    x = next;
    gx = gn;
    phi_x = phi_n;
    violation = next_violation;
    lipschitz *= 0.9;
  }
  exhausted.iterations = budget;
  return exhausted;
}

}  // namespace faircut
