#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "maxent/classical.hpp"
#include "maxent/error.hpp"
#include "maxent/random_instances.hpp"

using namespace maxent;

namespace {

// Independent scalar oracle for one constraint: bisection on
// sum_i phi_i A_i e^{alpha A_i} / sum_i phi_i e^{alpha A_i} = target.
double oracle_alpha(const std::vector<double>& phi, const std::vector<double>& a, double target) {
  auto mean = [&](double alpha) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double w = phi[i] * std::exp(alpha * a[i]);
      num += w * a[i];
      den += w;
    }
    return num / den;
  };
  double lo = -50.0, hi = 50.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (mean(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ClassicalDistribution uniform(std::size_t n) {
  return ClassicalDistribution::normalize(std::vector<double>(n, 1.0));
}

}  // namespace

TEST_CASE("ClassicalDistribution invariants") {
  CHECK_THROWS_AS(ClassicalDistribution({0.5, -0.1}), DomainError);
  CHECK_THROWS_AS(ClassicalDistribution({0.5, NAN}), DomainError);
  CHECK_THROWS_AS(ClassicalDistribution({0.5, 0.6}, true), DomainError);
  CHECK_NOTHROW(ClassicalDistribution({0.5, 0.6}));
  CHECK_THROWS_AS(ClassicalDistribution::normalize({0.0, 0.0}), DomainError);
  const auto d = ClassicalDistribution::normalize({1.0, 3.0});
  CHECK(d.normalized());
  CHECK(d[0] == 0.25);
  CHECK(d[1] == 0.75);
}

TEST_CASE("relative_entropy examples") {
  InstanceGenerator gen(1);
  for (int rep = 0; rep < 5; ++rep) {
    const auto phi = gen.distribution(6);
    CHECK(relative_entropy(phi, phi, EntropyForm::normalized) == 0.0);
    CHECK(relative_entropy(phi, phi, EntropyForm::full) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const ClassicalDistribution rho({1.0, 0.0}, true);
  const ClassicalDistribution phi({0.5, 0.5}, true);
  CHECK(relative_entropy(rho, phi) == doctest::Approx(-std::numbers::ln2).epsilon(1e-15));
  CHECK(relative_entropy(rho, phi, EntropyForm::full) ==
        doctest::Approx(1.0 - std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("relative_entropy is never positive for normalized inputs") {
  InstanceGenerator gen(2);
  for (int rep = 0; rep < 50; ++rep) {
    const auto rho = gen.distribution(5, 2.0);
    const auto phi = gen.distribution(5, 2.0);
    CHECK(relative_entropy(rho, phi) <= 1e-15);
  }
}

TEST_CASE("relative_entropy support and shape errors") {
  const ClassicalDistribution rho({0.5, 0.5}, true);
  const ClassicalDistribution phi({1.0, 0.0}, true);
  try {
    relative_entropy(rho, phi);
    FAIL("expected SupportViolation");
  } catch (const SupportViolation& e) {
    CHECK(e.index() == 1);
  }
  // Zero posterior weight where the prior vanishes is fine.
  CHECK(relative_entropy(phi, phi) == 0.0);
  CHECK_THROWS_AS(relative_entropy(rho, uniform(3)), ShapeError);
}

TEST_CASE("solve_classical: no constraints returns the prior exactly") {
  InstanceGenerator gen(3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto prior = gen.distribution(gen.index(1, 9));
    const auto r = solve_classical(prior, {});
    CHECK(r.converged);
    CHECK(r.multipliers.empty());
    for (std::size_t i = 0; i < prior.size(); ++i) CHECK(r.posterior[i] == prior[i]);
  }
}

TEST_CASE("solve_classical: already satisfied constraint has zero multiplier") {
  const std::vector<ClassicalConstraint> cons{{{1.0, 2.0, 3.0}, 2.0}};
  const auto r = solve_classical(uniform(3), cons);
  CHECK(r.converged);
  CHECK(r.multipliers[0] == 0.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.posterior[i] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("solve_classical: uniform prior on {1,2,3} with <x> = 2.5") {
  // With u = e^alpha the equation is u^2 - u - 3 = 0.
  const double closed_form = std::log((1.0 + std::sqrt(13.0)) / 2.0);
  const double bisected = oracle_alpha({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}, 2.5);
  REQUIRE(bisected == doctest::Approx(closed_form).epsilon(1e-13));
  REQUIRE(closed_form == doctest::Approx(0.8341151943524012).epsilon(1e-15));

  const std::vector<ClassicalConstraint> cons{{{1.0, 2.0, 3.0}, 2.5}};
  const auto r = solve_classical(uniform(3), cons);
  CHECK(r.converged);
  CHECK(r.multipliers[0] == doctest::Approx(closed_form).epsilon(1e-10));
  CHECK(std::abs(r.residuals[0]) <= 1e-10);
  const double u = std::exp(closed_form);
  const double z = u + u * u + u * u * u;
  CHECK(r.posterior[0] == doctest::Approx(u / z).epsilon(1e-10));
  CHECK(r.posterior[2] == doctest::Approx(u * u * u / z).epsilon(1e-10));
}

TEST_CASE("solve_classical matches the scalar oracle on random single constraints") {
  InstanceGenerator gen(4);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = gen.index(2, 10);
    const auto prior = gen.distribution(n);
    const auto a = gen.vector(n);
    const double hidden = gen.uniform(-2.0, 2.0);
    const auto target_post = classical_posterior(prior, std::vector<ClassicalConstraint>{{a, 0.0}},
                                                 std::vector<double>{hidden});
    double target = 0.0;
    for (std::size_t i = 0; i < n; ++i) target += target_post.posterior[i] * a[i];

    const auto r = solve_classical(prior, std::vector<ClassicalConstraint>{{a, target}});
    CHECK(r.converged);
    const std::vector<double> phi(prior.weights().begin(), prior.weights().end());
    CHECK(r.multipliers[0] == doctest::Approx(oracle_alpha(phi, a, target)).epsilon(1e-8));
  }
}

TEST_CASE("canonical form: posterior_i Z / phi_i = exp(sum_j alpha_j A_j(i))") {
  InstanceGenerator gen(5);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = gen.index(3, 8);
    // Unnormalized prior on purpose: Z absorbs the total weight.
    std::vector<double> w(n);
    for (double& x : w) x = gen.uniform(0.1, 3.0);
    const ClassicalDistribution prior(w);
    std::vector<ClassicalConstraint> cons;
    const std::size_t m = gen.index(1, std::min<std::size_t>(3, n - 1));
    for (std::size_t j = 0; j < m; ++j) cons.push_back({gen.vector(n), 0.0});
    const auto hidden = classical_posterior(prior, cons, gen.vector(m));
    for (auto& c : cons) {
      c.target = 0.0;
      for (std::size_t i = 0; i < n; ++i) c.target += hidden.posterior[i] * c.values[i];
    }
    const auto r = solve_classical(prior, cons);
    REQUIRE(r.converged);
    CHECK(r.posterior.normalized());
    for (std::size_t i = 0; i < n; ++i) {
      double e = 0.0;
      for (std::size_t j = 0; j < m; ++j) e += r.multipliers[j] * cons[j].values[i];
      CHECK(r.posterior[i] * r.partition_value / prior[i] ==
            doctest::Approx(std::exp(e)).epsilon(1e-9));
    }
  }
}

TEST_CASE("log-partition gradient matches central differences") {
  InstanceGenerator gen(6);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 6, m = 2;
    const auto prior = gen.distribution(n);
    std::vector<ClassicalConstraint> cons{{gen.vector(n), 0.0}, {gen.vector(n), 0.0}};
    std::vector<double> alpha = gen.vector(m);
    const auto p = classical_posterior(prior, cons, alpha);
    for (std::size_t j = 0; j < m; ++j) {
      double analytic = 0.0;
      for (std::size_t i = 0; i < n; ++i) analytic += p.posterior[i] * cons[j].values[i];
      const double h = 1e-5;
      auto shifted = alpha;
      shifted[j] = alpha[j] + h;
      const double up = classical_log_partition(prior, cons, shifted);
      shifted[j] = alpha[j] - h;
      const double down = classical_log_partition(prior, cons, shifted);
      const double fd = (up - down) / (2.0 * h);
      CHECK(std::abs(fd - analytic) <= 1e-6 * std::max(1.0, std::abs(analytic)));
    }
  }
}

TEST_CASE("log-partition is convex along a single constraint") {
  InstanceGenerator gen(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto prior = gen.distribution(5);
    const std::vector<ClassicalConstraint> cons{{gen.vector(5), 0.0}};
    const double h = 1e-3;
    for (double a = -5.0; a <= 5.0; a += 0.25) {
      const double f0 = classical_log_partition(prior, cons, std::vector<double>{a});
      const double fp = classical_log_partition(prior, cons, std::vector<double>{a + h});
      const double fm = classical_log_partition(prior, cons, std::vector<double>{a - h});
      CHECK(fp - 2.0 * f0 + fm >= -1e-8);
    }
  }
}

TEST_CASE("constraints supported on a subdomain leave complement conditionals unchanged") {
  const ClassicalDistribution prior = uniform(4);
  const std::vector<ClassicalConstraint> cons{{{1.0, 1.0, 0.0, 0.0}, 0.5},
                                              {{1.0, 2.0, 0.0, 0.0}, 0.8}};
  const auto r = solve_classical(prior, cons);
  REQUIRE(r.converged);
  const double rest = r.posterior[2] + r.posterior[3];
  CHECK(rest == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(r.posterior[2] / rest - 0.5) <= 1e-10);
  CHECK(std::abs(r.posterior[3] / rest - 0.5) <= 1e-10);
  // Inside D: rho_1 + rho_2 = 0.5, rho_1 + 2 rho_2 = 0.8.
  CHECK(r.posterior[0] == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(r.posterior[1] == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("jointly permuting states permutes the posterior") {
  InstanceGenerator gen(8);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 6;
    const auto prior = gen.distribution(n);
    std::vector<ClassicalConstraint> cons{{gen.vector(n), 0.0}, {gen.vector(n), 0.0}};
    const auto hidden = classical_posterior(prior, cons, gen.vector(2));
    for (auto& c : cons)
      for (std::size_t i = 0; i < n; ++i) c.target += hidden.posterior[i] * c.values[i];

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::vector<double> pw(n);
    auto pcons = cons;
    for (std::size_t i = 0; i < n; ++i) {
      pw[i] = prior[perm[i]];
      for (std::size_t j = 0; j < cons.size(); ++j) pcons[j].values[i] = cons[j].values[perm[i]];
    }
    const auto r = solve_classical(prior, cons);
    const auto rp = solve_classical(ClassicalDistribution::normalize(pw), pcons);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(rp.posterior[i] == doctest::Approx(r.posterior[perm[i]]).epsilon(1e-10));
    for (std::size_t j = 0; j < cons.size(); ++j)
      CHECK(rp.multipliers[j] == doctest::Approx(r.multipliers[j]).epsilon(1e-8));
  }
}

TEST_CASE("solve_classical error paths") {
  const std::vector<ClassicalConstraint> outside{{{1.0, 2.0, 3.0}, 4.0}};
  CHECK_THROWS_AS(solve_classical(uniform(3), outside), InfeasibleError);
  const std::vector<ClassicalConstraint> boundary{{{1.0, 2.0, 3.0}, 3.0}};
  CHECK_THROWS_AS(solve_classical(uniform(3), boundary), InfeasibleError);
  const std::vector<ClassicalConstraint> constant{{{1.0, 1.0, 1.0}, 1.0}};
  CHECK_THROWS_AS(solve_classical(uniform(3), constant), InfeasibleError);

  const std::vector<ClassicalConstraint> ok{{{1.0, 2.0, 3.0}, 2.5}};
  CHECK_THROWS_AS(solve_classical(ClassicalDistribution({0.5, 0.0, 0.5}), ok), DomainError);
  const std::vector<ClassicalConstraint> short_values{{{1.0, 2.0}, 1.5}};
  CHECK_THROWS_AS(solve_classical(uniform(3), short_values), ShapeError);

  // Individually feasible, jointly impossible: rho_1 + rho_2 <= 1.
  const std::vector<ClassicalConstraint> joint{{{1.0, 0.0, 0.0}, 0.6}, {{0.0, 1.0, 0.0}, 0.6}};
  CHECK_THROWS_AS(solve_classical(uniform(3), joint), InfeasibleError);
}

TEST_CASE("duplicated consistent constraints still converge") {
  const std::vector<ClassicalConstraint> cons{{{1.0, 2.0, 3.0}, 2.5}, {{1.0, 2.0, 3.0}, 2.5}};
  const auto r = solve_classical(uniform(3), cons);
  CHECK(r.converged);
  const double total = r.multipliers[0] + r.multipliers[1];
  CHECK(total == doctest::Approx(std::log((1.0 + std::sqrt(13.0)) / 2.0)).epsilon(1e-9));
}

TEST_CASE("iteration cap yields an unconverged report with the best iterate") {
  const std::vector<ClassicalConstraint> cons{{{1.0, 2.0, 3.0, 4.0}, 3.5},
                                              {{1.0, 0.0, 1.0, 0.0}, 0.3}};
  SolverOptions opts;
  opts.max_iter = 1;
  const auto r = solve_classical(uniform(4), cons, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.max_residual() > opts.tol);
  CHECK(r.posterior.normalized());

  const auto full = solve_classical(uniform(4), cons);
  CHECK(full.converged);
  CHECK(full.max_residual() <= 1e-10);
  CHECK(full.trace.size() == static_cast<std::size_t>(full.iterations) + 1);
}

TEST_CASE("warm starts converge to the same multipliers") {
  const std::vector<ClassicalConstraint> cons{{{1.0, 2.0, 3.0, 4.0}, 3.1},
                                              {{1.0, 0.0, 1.0, 0.0}, 0.3}};
  SolverOptions opts;
  opts.initial_multipliers = {3.0, -2.0};
  const auto a = solve_classical(uniform(4), cons);
  const auto b = solve_classical(uniform(4), cons, opts);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.multipliers[0] == doctest::Approx(b.multipliers[0]).epsilon(1e-8));
  CHECK(a.multipliers[1] == doctest::Approx(b.multipliers[1]).epsilon(1e-8));
}
