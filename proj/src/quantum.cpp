#include "maxent/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dual_newton.hpp"
#include "maxent/error.hpp"

namespace maxent {

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(HermitianOperator op, bool normalized, double trace_tol)
    : op_(std::move(op)), normalized_(normalized), trace_tol_(trace_tol) {
  spectrum_ = eigh(op_);
  validate();
}

DensityMatrix DensityMatrix::normalize(const HermitianOperator& op) {
  SpectralDecomposition spec = eigh(op);
  const double tr = op.trace();
  if (!(tr > 0.0)) {
    std::ostringstream msg;
    msg << "cannot normalize an operator with trace " << tr;
    throw DomainError(msg.str(), tr);
  }
  for (double& l : spec.eigenvalues) l /= tr;
  return from_spectrum(std::move(spec));
}

DensityMatrix DensityMatrix::from_spectrum(SpectralDecomposition spectrum, bool normalized,
                                           double trace_tol) {
  DensityMatrix d;
  d.op_ = spectrum.reconstruct();
  d.spectrum_ = std::move(spectrum);
  d.normalized_ = normalized;
  d.trace_tol_ = trace_tol;
  d.validate();
  return d;
}

void DensityMatrix::validate() {
  if (!spectrum_.eigenvalues.empty() && spectrum_.eigenvalues.front() < -kPsdTol) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << spectrum_.eigenvalues.front();
    throw DomainError(msg.str(), spectrum_.eigenvalues.front());
  }
  if (normalized_ && std::abs(op_.trace() - 1.0) > trace_tol_) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density matrix marked normalized has trace " << op_.trace();
    throw DomainError(msg.str(), op_.trace());
  }
}

// ---------------------------------------------------------------------------
// Entropy and expectations

namespace {

void require_full_rank(const DensityMatrix& phi, const char* what) {
  const auto ev = phi.eigenvalues();
  if (ev.empty()) throw ShapeError(std::string(what) + ": empty prior");
  if (!(ev.front() > kMinPriorEigenvalue)) {
    std::ostringstream msg;
    msg << what << ": prior is rank deficient (smallest eigenvalue " << ev.front() << ")";
    throw DomainError(msg.str(), ev.front());
  }
}

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << expected << " vs " << got << ")";
    throw ShapeError(msg.str());
  }
}

HermitianOperator log_of(const DensityMatrix& phi) {
  return phi.spectrum().apply([](double x) { return std::log(x); });
}

}  // namespace

double quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& phi,
                                EntropyForm form) {
  require_dim(phi.dim(), rho.dim(), "quantum_relative_entropy");
  require_full_rank(phi, "quantum_relative_entropy");
  double rho_log_rho = 0.0;
  for (double l : rho.eigenvalues())
    if (l > 0.0) rho_log_rho += l * std::log(l);
  const double rho_log_phi = trace_product(rho.op(), log_of(phi));
  double s = -(rho_log_rho - rho_log_phi);
  if (form == EntropyForm::full) s += rho.trace();
  return s;
}

double expectation(const DensityMatrix& rho, const HermitianOperator& observable) {
  require_dim(rho.dim(), observable.dim(), "expectation");
  return trace_product(rho.op(), observable);
}

// ---------------------------------------------------------------------------
// Exponential family

namespace {

// Posterior family around a fixed prior with ln phi computed once.
class GibbsFamily {
 public:
  GibbsFamily(const DensityMatrix& phi, std::span<const HermitianOperator> observables)
      : observables_(observables) {
    require_full_rank(phi, "posterior");
    for (const auto& a : observables) require_dim(phi.dim(), a.dim(), "posterior");
    log_prior_ = log_of(phi);
  }

  struct Point {
    SpectralDecomposition spectrum;  // of rho(alpha)
    double log_partition = 0.0;
  };

  Point at(std::span<const double> alphas) const {
    if (alphas.size() != observables_.size()) {
      std::ostringstream msg;
      msg << alphas.size() << " multipliers given for " << observables_.size() << " observables";
      throw ShapeError(msg.str());
    }
    HermitianOperator c = log_prior_;
    for (std::size_t i = 0; i < alphas.size(); ++i)
      if (alphas[i] != 0.0) c += alphas[i] * observables_[i];
    Point p;
    p.spectrum = eigh(c);
    auto& ev = p.spectrum.eigenvalues;
    const double shift = ev.back();
    double sum = 0.0;
    for (double& l : ev) {
      l = std::exp(l - shift);
      sum += l;
    }
    for (double& l : ev) l /= sum;
    p.log_partition = shift + std::log(sum);
    return p;
  }

 private:
  std::span<const HermitianOperator> observables_;
  HermitianOperator log_prior_;
};

}  // namespace

QuantumPosterior posterior_from_multipliers(const DensityMatrix& phi,
                                            std::span<const HermitianOperator> observables,
                                            std::span<const double> alphas) {
  const GibbsFamily family(phi, observables);
  GibbsFamily::Point p = family.at(alphas);
  QuantumPosterior out;
  out.log_partition = p.log_partition;
  out.partition_value = std::exp(p.log_partition);
  out.posterior = DensityMatrix::from_spectrum(std::move(p.spectrum));
  return out;
}

double log_partition(const DensityMatrix& phi, std::span<const HermitianOperator> observables,
                     std::span<const double> alphas) {
  return GibbsFamily(phi, observables).at(alphas).log_partition;
}

// ---------------------------------------------------------------------------
// Solver

QuantumReport solve_quantum(const DensityMatrix& prior,
                            std::span<const QuantumConstraint> constraints,
                            const SolverOptions& options) {
  if (!prior.normalized())
    throw DomainError("solve_quantum: prior must be a normalized density matrix");
  require_full_rank(prior, "solve_quantum");
  const std::size_t m = constraints.size();
  std::vector<HermitianOperator> observables;
  observables.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& c = constraints[j];
    require_dim(prior.dim(), c.observable.dim(), "solve_quantum");
    const SpectralDecomposition spec = eigh(c.observable);
    const double lo = spec.eigenvalues.front();
    const double hi = spec.eigenvalues.back();
    if (!std::isfinite(c.target) || !(c.target > lo && c.target < hi)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "constraint " << j << " target " << c.target
          << " is not strictly inside the observable's spectral range (" << lo << ", " << hi
          << ")";
      throw InfeasibleError(msg.str());
    }
    observables.push_back(c.observable);
  }

  const GibbsFamily family(prior, observables);
  Eigen::VectorXd targets(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) targets(static_cast<Eigen::Index>(j)) = constraints[j].target;

  auto expectations = [&](const SpectralDecomposition& spectrum) {
    const HermitianOperator rho = spectrum.reconstruct();
    Eigen::VectorXd e(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j)
      e(static_cast<Eigen::Index>(j)) = trace_product(rho, observables[j]);
    return e;
  };

  detail::DualProblem dual;
  dual.evaluate = [&](const Eigen::VectorXd& alpha) {
    const auto p = family.at(std::span<const double>(alpha.data(), m));
    return detail::DualPoint{p.log_partition - alpha.dot(targets),
                             expectations(p.spectrum) - targets};
  };
  dual.hessian = [&](const Eigen::VectorXd& alpha, const detail::DualPoint&) {
    return detail::finite_difference_hessian(dual, alpha);
  };

  Eigen::VectorXd alpha0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  if (!options.initial_multipliers.empty()) {
    if (options.initial_multipliers.size() != m)
      throw ShapeError("initial_multipliers length does not match the constraint count");
    for (std::size_t j = 0; j < m; ++j)
      alpha0(static_cast<Eigen::Index>(j)) = options.initial_multipliers[j];
  }

  detail::DualOptions dopts;
  dopts.tol = options.tol;
  dopts.max_iter = options.max_iter;
  detail::DualResult res = detail::minimize_dual(dual, alpha0, dopts);

  QuantumReport report;
  report.multipliers.assign(res.alpha.data(), res.alpha.data() + m);
  GibbsFamily::Point p = family.at(report.multipliers);
  report.log_partition = p.log_partition;
  report.partition_value = std::exp(p.log_partition);
  const Eigen::VectorXd e = expectations(p.spectrum);
  report.posterior = DensityMatrix::from_spectrum(std::move(p.spectrum));
  report.residuals.resize(m);
  for (std::size_t j = 0; j < m; ++j)
    report.residuals[j] = e(static_cast<Eigen::Index>(j)) - constraints[j].target;
  report.iterations = res.iterations;
  report.trace = std::move(res.trace);
  report.converged = report.max_residual() <= options.tol;
  return report;
}

}  // namespace maxent
