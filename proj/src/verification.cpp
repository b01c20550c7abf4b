#include "maxent/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "maxent/error.hpp"
#include "maxent/random_instances.hpp"

namespace maxent::verification {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

double max_vec_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

PropertyResult make_result(std::string name, double max_deviation, double threshold,
                           std::string detail) {
  PropertyResult r;
  r.name = std::move(name);
  r.max_deviation = max_deviation;
  r.threshold = threshold;
  r.passed = max_deviation <= threshold;
  r.detail = std::move(detail);
  return r;
}

HermitianOperator embed(const HermitianOperator& op, Subsystem factor, std::size_t other_dim) {
  const HermitianOperator id = HermitianOperator::identity(other_dim);
  return factor == Subsystem::first ? kron(op, id) : kron(id, op);
}

PropertyResult check_prior_recovery(const ClassicalDistribution& prior, double threshold) {
  const ClassicalReport r = solve_classical(prior, {});
  const ClassicalDistribution expected =
      ClassicalDistribution::normalize({prior.weights().begin(), prior.weights().end()});
  const double dev = max_vec_diff(r.posterior.weights(), expected.weights());
  return make_result("prior_recovery", r.converged ? dev : kInf, threshold,
                     "classical, n = " + std::to_string(prior.size()));
}

PropertyResult check_prior_recovery(const DensityMatrix& prior, double threshold) {
  const QuantumReport r = solve_quantum(prior, {});
  const ComplexMatrix expected = prior.matrix() * cplx(1.0 / prior.trace());
  const double dev = max_abs_diff(r.posterior.matrix(), expected);
  return make_result("prior_recovery", r.converged ? dev : kInf, threshold,
                     "quantum, dim = " + std::to_string(prior.dim()));
}

PropertyResult check_subsystem_independence(const DensityMatrix& prior1,
                                            const DensityMatrix& prior2,
                                            const std::vector<QuantumConstraint>& cons1,
                                            const std::vector<QuantumConstraint>& cons2,
                                            double threshold) {
  const std::size_t d1 = prior1.dim();
  const std::size_t d2 = prior2.dim();
  std::vector<QuantumConstraint> joint;
  for (const auto& c : cons1) joint.push_back({embed(c.observable, Subsystem::first, d2), c.target});
  for (const auto& c : cons2) joint.push_back({embed(c.observable, Subsystem::second, d1), c.target});

  const DensityMatrix joint_prior(kron(prior1.op(), prior2.op()));
  const QuantumReport rj = solve_quantum(joint_prior, joint);
  const QuantumReport r1 = solve_quantum(prior1, cons1);
  const QuantumReport r2 = solve_quantum(prior2, cons2);
  const bool converged = rj.converged && r1.converged && r2.converged;
  const ComplexMatrix product = kron(r1.posterior.matrix(), r2.posterior.matrix());
  const double dev = max_abs_diff(rj.posterior.matrix(), product);
  std::ostringstream detail;
  detail << "dims " << d1 << "x" << d2 << ", " << cons1.size() << "+" << cons2.size()
         << " constraints" << (converged ? "" : ", not converged");
  return make_result("subsystem_independence", converged ? dev : kInf, threshold, detail.str());
}

PropertyResult check_commuting_reduction(const std::vector<double>& diag_prior,
                                         const std::vector<std::vector<double>>& diag_observables,
                                         const std::vector<double>& targets, double threshold) {
  if (diag_observables.size() != targets.size())
    throw ShapeError("check_commuting_reduction: one target per observable required");

  const ClassicalDistribution cprior = ClassicalDistribution::normalize(diag_prior);
  std::vector<ClassicalConstraint> ccons;
  std::vector<QuantumConstraint> qcons;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    ccons.push_back({diag_observables[j], targets[j]});
    qcons.push_back({HermitianOperator::diagonal(diag_observables[j]), targets[j]});
  }
  const DensityMatrix qprior = DensityMatrix::normalize(HermitianOperator::diagonal(diag_prior));

  const ClassicalReport rc = solve_classical(cprior, ccons);
  const QuantumReport rq = solve_quantum(qprior, qcons);

  const double post_dev =
      max_abs_diff(rq.posterior.matrix(), ComplexMatrix::diagonal(rc.posterior.weights()));
  double entropy_dev = 0.0;
  for (EntropyForm form : {EntropyForm::normalized, EntropyForm::full}) {
    const double sc = relative_entropy(rc.posterior, cprior, form);
    const double sq = quantum_relative_entropy(rq.posterior, qprior, form);
    entropy_dev = std::max(entropy_dev, std::abs(sc - sq));
  }
  const bool converged = rc.converged && rq.converged;
  std::ostringstream detail;
  detail << "n = " << diag_prior.size() << ", " << targets.size()
         << " constraints, posterior " << fmt(post_dev) << ", entropy " << fmt(entropy_dev)
         << (converged ? "" : ", not converged");
  return make_result("commuting_reduction", converged ? std::max(post_dev, entropy_dev) : kInf,
                     threshold, detail.str());
}

PropertyResult check_zero_multiplier(const ClassicalDistribution& prior,
                                     const ClassicalConstraint& constraint, double threshold) {
  const std::vector<ClassicalConstraint> cons{constraint};
  const ClassicalReport r = solve_classical(prior, cons);
  return make_result("zero_multiplier", r.converged ? std::abs(r.multipliers[0]) : kInf,
                     threshold, "classical, n = " + std::to_string(prior.size()));
}

PropertyResult check_zero_multiplier(const DensityMatrix& prior,
                                     const QuantumConstraint& constraint, double threshold) {
  const std::vector<QuantumConstraint> cons{constraint};
  const QuantumReport r = solve_quantum(prior, cons);
  return make_result("zero_multiplier", r.converged ? std::abs(r.multipliers[0]) : kInf,
                     threshold, "quantum, dim = " + std::to_string(prior.dim()));
}

PropertyResult check_log_tensor_additivity(const DensityMatrix& rho1, const DensityMatrix& phi1,
                                           const DensityMatrix& rho2, const DensityMatrix& phi2,
                                           double threshold) {
  if (rho1.dim() != phi1.dim() || rho2.dim() != phi2.dim())
    throw ShapeError("check_log_tensor_additivity: rho and prior dims differ");
  auto update_term = [](const HermitianOperator& rho, const HermitianOperator& phi) {
    return (matrix_log(phi, kMinPriorEigenvalue) - matrix_log(rho, kMinPriorEigenvalue));
  };
  const HermitianOperator lhs =
      update_term(kron(rho1.op(), rho2.op()), kron(phi1.op(), phi2.op()));
  const HermitianOperator rhs =
      embed(update_term(rho1.op(), phi1.op()), Subsystem::first, rho2.dim()) +
      embed(update_term(rho2.op(), phi2.op()), Subsystem::second, rho1.dim());
  return make_result("log_tensor_additivity", max_abs_diff(lhs.matrix(), rhs.matrix()), threshold,
                     "dims " + std::to_string(rho1.dim()) + "x" + std::to_string(rho2.dim()));
}

PropertyResult check_subdomain_independence(const ClassicalDistribution& prior,
                                            const std::vector<bool>& domain_mask,
                                            const ClassicalConstraint& local_constraint,
                                            std::optional<double> domain_mass, double threshold) {
  const std::size_t n = prior.size();
  if (domain_mask.size() != n || local_constraint.values.size() != n)
    throw ShapeError("check_subdomain_independence: mask and constraint must match the support");
  std::vector<double> indicator(n);
  double prior_mass = 0.0;
  double prior_rest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    indicator[i] = domain_mask[i] ? 1.0 : 0.0;
    (domain_mask[i] ? prior_mass : prior_rest) += prior[i];
    if (!domain_mask[i] && local_constraint.values[i] != 0.0)
      throw DomainError("local constraint must vanish outside the domain", local_constraint.values[i]);
  }
  if (prior_rest == 0.0 || prior_mass == 0.0)
    throw DomainError("domain must be a nonempty proper subset of the support");

  const double mass = domain_mass.value_or(prior_mass / (prior_mass + prior_rest));
  std::vector<ClassicalConstraint> cons{{indicator, mass}};
  // A local constraint with no nonzero values carries no information.
  const bool has_local = std::any_of(local_constraint.values.begin(), local_constraint.values.end(),
                                     [](double v) { return v != 0.0; });
  if (has_local) cons.push_back(local_constraint);
  const ClassicalReport r = solve_classical(prior, cons);

  double post_rest = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (!domain_mask[i]) post_rest += r.posterior[i];
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (!domain_mask[i])
      dev = std::max(dev, std::abs(r.posterior[i] / post_rest - prior[i] / prior_rest));
  std::ostringstream detail;
  detail << "n = " << n << ", rho(D) = " << mass << (r.converged ? "" : ", not converged");
  return make_result("subdomain_independence", r.converged ? dev : kInf, threshold, detail.str());
}

// ---------------------------------------------------------------------------
// Randomized suite

namespace {

struct Aggregate {
  Aggregate(std::string n, double t) : name(std::move(n)), threshold(t) {}

  std::string name;
  double threshold;
  double worst = 0.0;
  int worst_trial = -1;
  std::string worst_detail;
  std::string first_error;

  void add(int trial, const PropertyResult& r) {
    const double d = std::isnan(r.max_deviation) ? kInf : r.max_deviation;
    if (worst_trial < 0 || d > worst) {
      worst = d;
      worst_trial = trial;
      worst_detail = r.detail;
    }
  }

  void fail(int trial, const std::string& what) {
    if (first_error.empty()) first_error = "trial " + std::to_string(trial) + ": " + what;
    worst = kInf;
    worst_trial = trial;
  }

  PropertyResult finish(std::uint64_t seed, int trials) const {
    std::ostringstream d;
    d << "seed " << seed << ", " << trials << " trials";
    if (worst_trial >= 0) d << ", worst trial " << worst_trial << " (" << worst_detail << ")";
    if (!first_error.empty()) d << ", error in " << first_error;
    return make_result(name, worst, threshold, d.str());
  }
};

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t check) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(check)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

void run_trials(Aggregate& agg, std::uint64_t seed, std::uint64_t check, int trials,
                const std::function<PropertyResult(InstanceGenerator&)>& trial_fn) {
  InstanceGenerator gen(sub_seed(seed, check));
  for (int t = 0; t < trials; ++t) {
    try {
      agg.add(t, trial_fn(gen));
    } catch (const Error& e) {
      agg.fail(t, e.what());
    }
  }
}

PropertyResult worst_of(const PropertyResult& a, const PropertyResult& b) {
  const bool b_worse = std::isnan(b.max_deviation) || b.max_deviation > a.max_deviation;
  return b_worse ? b : a;
}

// Targets reachable by construction: expectations under the posterior at a
// hidden multiplier vector.
std::vector<double> classical_targets(const ClassicalDistribution& prior,
                                      const std::vector<std::vector<double>>& observables,
                                      const std::vector<double>& hidden_alpha) {
  std::vector<ClassicalConstraint> cons;
  for (const auto& v : observables) cons.push_back({v, 0.0});
  const ClassicalPosterior p = classical_posterior(prior, cons, hidden_alpha);
  std::vector<double> t;
  for (const auto& v : observables) {
    double e = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) e += p.posterior[i] * v[i];
    t.push_back(e);
  }
  return t;
}

}  // namespace

std::vector<PropertyResult> run_suite(std::uint64_t seed, int trials) {
  if (trials < 1) throw DomainError("run_suite: trials must be >= 1", trials);
  std::vector<PropertyResult> out;

  {
    Aggregate agg{"prior_recovery", kPriorRecoveryThreshold};
    run_trials(agg, seed, 1, trials, [](InstanceGenerator& g) {
      const auto c = check_prior_recovery(g.distribution(g.index(1, 8)));
      const auto q = check_prior_recovery(g.density(g.index(1, 6)));
      return worst_of(c, q);
    });
    out.push_back(agg.finish(seed, trials));
  }

  {
    Aggregate agg{"subsystem_independence", kSubsystemThreshold};
    run_trials(agg, seed, 2, trials, [](InstanceGenerator& g) {
      if (g.index(0, 1) == 0) {
        // Complete Bloch-vector basis on each qubit factor pins both marginals.
        const DensityMatrix phi1 = g.density(2), phi2 = g.density(2);
        const DensityMatrix rho1 = g.density(2), rho2 = g.density(2);
        std::vector<QuantumConstraint> c1, c2;
        for (const auto& s : {pauli_x(), pauli_y(), pauli_z()}) {
          c1.push_back({s, expectation(rho1, s)});
          c2.push_back({s, expectation(rho2, s)});
        }
        return check_subsystem_independence(phi1, phi2, c1, c2);
      }
      const std::size_t d1 = g.index(2, 3), d2 = g.index(2, 3);
      const DensityMatrix phi1 = g.density(d1), phi2 = g.density(d2);
      const HermitianOperator a = g.hermitian(d1), b = g.hermitian(d2);
      const std::vector<QuantumConstraint> c1{{a, expectation(g.density(d1), a)}};
      const std::vector<QuantumConstraint> c2{{b, expectation(g.density(d2), b)}};
      return check_subsystem_independence(phi1, phi2, c1, c2);
    });
    out.push_back(agg.finish(seed, trials));
  }

  {
    Aggregate agg{"commuting_reduction", kCommutingThreshold};
    run_trials(agg, seed, 3, trials, [](InstanceGenerator& g) {
      const std::size_t n = g.index(1, 8);
      const ClassicalDistribution prior = g.distribution(n);
      const std::size_t m = n == 1 ? 0 : g.index(0, std::min<std::size_t>(3, n - 1));
      std::vector<std::vector<double>> obs;
      for (std::size_t j = 0; j < m; ++j) obs.push_back(g.vector(n));
      const std::vector<double> targets = classical_targets(prior, obs, g.vector(m));
      return check_commuting_reduction({prior.weights().begin(), prior.weights().end()}, obs,
                                       targets);
    });
    out.push_back(agg.finish(seed, trials));
  }

  {
    Aggregate agg{"zero_multiplier", kZeroMultiplierThreshold};
    run_trials(agg, seed, 4, trials, [](InstanceGenerator& g) {
      const std::size_t n = g.index(2, 8);
      const ClassicalDistribution prior = g.distribution(n);
      ClassicalConstraint cc{g.vector(n), 0.0};
      for (std::size_t i = 0; i < n; ++i) cc.target += prior[i] * cc.values[i];

      const std::size_t d = g.index(2, 6);
      const DensityMatrix qprior = g.density(d);
      const HermitianOperator a = g.hermitian(d);
      const QuantumConstraint qc{a, expectation(qprior, a)};
      return worst_of(check_zero_multiplier(prior, cc), check_zero_multiplier(qprior, qc));
    });
    out.push_back(agg.finish(seed, trials));
  }

  {
    Aggregate agg{"log_tensor_additivity", kLogAdditivityThreshold};
    run_trials(agg, seed, 5, trials, [](InstanceGenerator& g) {
      const DensityMatrix r1 = g.density(2), p1 = g.density(2);
      const DensityMatrix r2 = g.density(2), p2 = g.density(2);
      return check_log_tensor_additivity(r1, p1, r2, p2);
    });
    out.push_back(agg.finish(seed, trials));
  }

  {
    Aggregate agg{"subdomain_independence", kSubdomainThreshold};
    run_trials(agg, seed, 6, trials, [](InstanceGenerator& g) {
      const std::size_t n = g.index(3, 8);
      const ClassicalDistribution prior = g.distribution(n);
      std::vector<bool> mask(n, false);
      // Nonempty proper subset with at least two states inside the domain.
      const std::size_t inside = g.index(2, n - 1);
      for (std::size_t i = 0; i < inside; ++i) mask[i] = true;
      std::shuffle(mask.begin(), mask.end(), g.engine());
      std::vector<double> indicator(n), local(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        indicator[i] = mask[i] ? 1.0 : 0.0;
        if (mask[i]) local[i] = g.normal();
      }
      const std::vector<double> targets =
          classical_targets(prior, {indicator, local}, g.vector(2));
      return check_subdomain_independence(prior, mask, {local, targets[1]}, targets[0]);
    });
    out.push_back(agg.finish(seed, trials));
  }

  return out;
}

}  // namespace maxent::verification
