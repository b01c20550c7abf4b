#include "dual_newton.hpp"

#include <cmath>
#include <sstream>

#include "maxent/error.hpp"

namespace maxent::detail {
namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

Eigen::VectorXd newton_direction(const Eigen::MatrixXd& hessian, const Eigen::VectorXd& g,
                                 double max_condition) {
  const Eigen::MatrixXd h = 0.5 * (hessian + hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) return -g;
  const Eigen::VectorXd& w = es.eigenvalues();
  const double wmax = w.maxCoeff();
  if (!(wmax > 0.0)) return -g;
  const double wmin = w.minCoeff();
  // Well conditioned: plain Newton. Otherwise shift the spectrum by
  // wmax/max_condition, which bounds the step along near-null directions.
  const double shift = (wmin > 0.0 && wmax / wmin <= max_condition) ? 0.0 : wmax / max_condition;
  const Eigen::VectorXd coeff = es.eigenvectors().transpose() * g;
  Eigen::VectorXd scaled(coeff.size());
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    // Redundant constraints leave exact null directions carrying only
    // rounding noise in the gradient; do not move along those.
    const bool null_dir = w(k) <= wmax / max_condition && std::abs(coeff(k)) <= 1e-12;
    scaled(k) = null_dir ? 0.0 : coeff(k) / (std::max(w(k), 0.0) + shift);
  }
  return -(es.eigenvectors() * scaled);
}

}  // namespace

Eigen::MatrixXd finite_difference_hessian(const DualProblem& problem, const Eigen::VectorXd& alpha,
                                          double rel_step) {
  const Eigen::Index m = alpha.size();
  const double h = rel_step * (inf_norm(alpha) + 1.0);
  Eigen::MatrixXd hess(m, m);
  Eigen::VectorXd probe = alpha;
  for (Eigen::Index j = 0; j < m; ++j) {
    probe(j) = alpha(j) + h;
    const Eigen::VectorXd plus = problem.evaluate(probe).gradient;
    probe(j) = alpha(j) - h;
    const Eigen::VectorXd minus = problem.evaluate(probe).gradient;
    probe(j) = alpha(j);
    hess.col(j) = (plus - minus) / (2.0 * h);
  }
  return 0.5 * (hess + hess.transpose());
}

DualResult minimize_dual(const DualProblem& problem, Eigen::VectorXd alpha0,
                         const DualOptions& options) {
  DualResult r;
  r.alpha = std::move(alpha0);
  r.at = problem.evaluate(r.alpha);

  for (int it = 0;; ++it) {
    const double res = inf_norm(r.at.gradient);
    r.trace.push_back(res);
    r.iterations = it;
    if (res <= options.tol) {
      r.converged = true;
      break;
    }
    if (it >= options.max_iter) break;

    const Eigen::VectorXd& g = r.at.gradient;
    Eigen::VectorXd d = newton_direction(problem.hessian(r.alpha, r.at), g, options.max_condition);
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      d = -g;
      slope = -g.squaredNorm();
    }

    bool accepted = false;
    double t = 1.0;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const Eigen::VectorXd cand = r.alpha + t * d;
      DualPoint next = problem.evaluate(cand);
      if (!std::isfinite(next.value) || !next.gradient.allFinite()) continue;
      const bool armijo = next.value <= r.at.value + 1e-4 * t * slope;
      // Near the optimum the decrease in G drops below its rounding floor;
      // accept steps that still shrink the residual.
      const bool flat = next.value <= r.at.value + 1e-13 * (1.0 + std::abs(r.at.value)) &&
                        inf_norm(next.gradient) < res;
      if (armijo || flat) {
        r.alpha = cand;
        r.at = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    if (inf_norm(r.alpha) > options.divergence_bound) {
      std::ostringstream msg;
      msg << "constraint targets are not jointly achievable: multipliers diverged (|alpha|_inf = "
          << inf_norm(r.alpha) << " after " << it + 1 << " iterations)";
      throw InfeasibleError(msg.str());
    }
  }
  return r;
}

}  // namespace maxent::detail
