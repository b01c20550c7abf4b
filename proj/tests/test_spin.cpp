#include <cmath>

#include "doctest.h"
#include "maxent/error.hpp"
#include "maxent/random_instances.hpp"
#include "maxent/spin.hpp"
#include "test_helpers.hpp"

using namespace maxent;

namespace {

SpinProblem make(double a, double b, std::array<double, 4> c, double target = 0.0) {
  SpinProblem p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.target = target;
  return p;
}

// exp(alpha A + ln diag(a, b)) through the Taylor series.
ComplexMatrix taylor_gibbs(const SpinProblem& p, double alpha) {
  ComplexMatrix c = spin_observable(p).matrix() * cplx(alpha);
  c(0, 0) += std::log(p.a);
  c(1, 1) += std::log(p.b);
  return maxent::testing::taylor_exp(c);
}

}  // namespace

TEST_CASE("spin eigenvalue examples") {
  const auto e0 = spin_eigenvalues(make(0.5, 0.5, {0, 1, 0, 0}), 0.0);
  CHECK(e0.center == doctest::Approx(std::log(0.5)));
  CHECK(e0.half_gap == 0.0);
  const auto e1 = spin_eigenvalues(make(0.5, 0.5, {0, 0, 0, 1}), 2.0);
  CHECK(e1.half_gap == doctest::Approx(2.0));
  CHECK(e1.plus == doctest::Approx(std::log(0.5) + 2.0));
  CHECK(e1.minus == doctest::Approx(std::log(0.5) - 2.0));
}

TEST_CASE("closed-form eigenvalues and partition agree with the general routes") {
  InstanceGenerator gen(31);
  for (int rep = 0; rep < 100; ++rep) {
    const SpinProblem p = gen.spin_problem();
    const double alpha = gen.uniform(-3.0, 3.0);
    const auto e = spin_eigenvalues(p, alpha);
    CHECK(e.half_gap >= 0.0);
    HermitianOperator c = alpha * spin_observable(p);
    const double logs[2] = {std::log(p.a), std::log(p.b)};
    c += HermitianOperator::diagonal(logs);
    const auto spec = eigh(c);
    CHECK(e.minus == doctest::Approx(spec.eigenvalues[0]).epsilon(1e-12));
    CHECK(e.plus == doctest::Approx(spec.eigenvalues[1]).epsilon(1e-12));
    const double z = taylor_gibbs(p, alpha).trace().real();
    CHECK(spin_partition(p, alpha) == doctest::Approx(z).epsilon(1e-12));
    CHECK(spin_log_partition(p, alpha) == doctest::Approx(std::log(z)).epsilon(1e-12));
  }
}

TEST_CASE("F(0) is the prior expectation") {
  InstanceGenerator gen(32);
  for (int rep = 0; rep < 50; ++rep) {
    const SpinProblem p = gen.spin_problem();
    // a + b = 1 for generated problems.
    CHECK(spin_constraint_value(p, 0.0) ==
          doctest::Approx(p.c[0] + p.c[3] * (p.a - p.b)).epsilon(1e-13));
  }
}

TEST_CASE("equal prior weights give F = c1 + cz tanh(alpha cz) for a z observable") {
  for (double alpha = -4.0; alpha <= 4.0; alpha += 0.5) {
    const auto p = make(0.5, 0.5, {0.3, 0.0, 0.0, 0.7});
    CHECK(spin_constraint_value(p, alpha) ==
          doctest::Approx(0.3 + 0.7 * std::tanh(0.7 * alpha)).epsilon(1e-14));
  }
}

TEST_CASE("F and the posterior agree with the Taylor-series Gibbs state") {
  InstanceGenerator gen(33);
  for (int rep = 0; rep < 100; ++rep) {
    const SpinProblem p = gen.spin_problem();
    const double alpha = gen.uniform(-3.0, 3.0);
    ComplexMatrix rho = taylor_gibbs(p, alpha);
    rho *= cplx(1.0 / rho.trace().real());
    const double f = maxent::testing::naive_trace_product(rho, spin_observable(p).matrix()).real();
    CHECK(spin_constraint_value(p, alpha) == doctest::Approx(f).epsilon(1e-12));
    CHECK(max_abs_diff(spin_posterior(p, alpha).matrix(), rho) <= 1e-12);
    // And the general quantum path.
    const std::vector<HermitianOperator> obs{spin_observable(p)};
    const double a[1] = {alpha};
    const auto q = posterior_from_multipliers(spin_prior(p), obs, a);
    CHECK(max_abs_diff(q.posterior.matrix(), rho) <= 1e-12);
  }
}

TEST_CASE("solve_spin examples") {
  const auto r = solve_spin(make(0.5, 0.5, {0, 0, 0, 1}, 0.4));
  CHECK(r.converged);
  CHECK(r.multipliers[0] == doctest::Approx(0.42364893019360184).epsilon(1e-12));

  const auto x = solve_spin(make(0.6, 0.4, {0, 1, 0, 0}, 0.2));
  CHECK(x.multipliers[0] == doctest::Approx(0.2055254529932228490).epsilon(1e-12));
  const ComplexMatrix expected(2, {0.5986410934030478, 0.1, 0.1, 0.40135890659695217});
  CHECK(max_abs_diff(x.posterior.matrix(), expected) <= 1e-12);

  InstanceGenerator gen(34);
  for (int rep = 0; rep < 20; ++rep) {
    SpinProblem p = gen.spin_problem();
    p.target = spin_constraint_value(p, 0.0);
    CHECK(std::abs(solve_spin(p).multipliers[0]) <= 1e-10);
  }
}

TEST_CASE("sigma_y coefficient enters as sigma_y") {
  const auto p = make(0.5, 0.5, {0, 0, 1, 0}, 0.4);
  const auto r = solve_spin(p);
  const double y = trace_product(r.posterior.op(), pauli_y());
  const double x = trace_product(r.posterior.op(), pauli_x());
  CHECK(y == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(std::abs(x) <= 1e-15);
}

TEST_CASE("solve_spin infeasible and degenerate cases") {
  CHECK_THROWS_AS(solve_spin(make(0.5, 0.5, {0, 0, 0, 1}, 1.0)), InfeasibleError);
  CHECK_THROWS_AS(solve_spin(make(0.5, 0.5, {0, 0, 0, 1}, -1.2)), InfeasibleError);
  CHECK_THROWS_AS(solve_spin(make(0.5, 0.5, {0.5, 0, 0, 0}, 0.2)), InfeasibleError);
  const auto r = solve_spin(make(0.5, 0.5, {0.5, 0, 0, 0}, 0.5));
  CHECK(r.converged);
  CHECK(r.multipliers[0] == 0.0);
  CHECK_THROWS_AS(solve_spin(make(0.0, 1.0, {0, 0, 0, 1}, 0.1)), DomainError);
  CHECK_THROWS_AS(solve_spin(make(0.5, 0.5, {0, NAN, 0, 1}, 0.1)), DomainError);
}

TEST_CASE("F is nondecreasing for positive scaling of the observable") {
  InstanceGenerator gen(35);
  for (int rep = 0; rep < 100; ++rep) {
    const SpinProblem p = gen.spin_problem();
    double previous = -INFINITY;
    for (int k = 0; k < 200; ++k) {
      const double f = spin_constraint_value(p, -10.0 + 20.0 * k / 199.0);
      CHECK(f >= previous - 1e-14);
      CHECK(f > p.c[0] - std::sqrt(p.c[1] * p.c[1] + p.c[2] * p.c[2] + p.c[3] * p.c[3]) - 1e-14);
      previous = f;
    }
  }
}

TEST_CASE("F is continuous through the removable singularity") {
  // cx = cy = 0 and alpha = -ln(a/b) / (2 cz) make dlambda vanish.
  const auto p = make(0.7, 0.3, {0.2, 0.0, 0.0, 0.9});
  const double root = -std::log(p.a / p.b) / (2.0 * p.c[3]);
  CHECK(spin_eigenvalues(p, root).half_gap <= 1e-14);
  const double at = spin_constraint_value(p, root);
  CHECK(std::isfinite(at));
  CHECK(at == doctest::Approx(p.c[0]).epsilon(1e-8));
  for (double eps : {1e-14, 1e-10, 1e-7, 1e-5}) {
    const double near = spin_constraint_value(p, root + eps);
    // Linear limit: F ~ c1 + cz^2 eps.
    CHECK(std::abs(near - (p.c[0] + p.c[3] * p.c[3] * eps)) <= 1e-8);
  }
}

TEST_CASE("solve_spin agrees with solve_quantum on random problems") {
  InstanceGenerator gen(36);
  for (int rep = 0; rep < 100; ++rep) {
    const SpinProblem p = gen.spin_problem();
    const auto s = solve_spin(p);
    const std::vector<QuantumConstraint> cons{{spin_observable(p), p.target}};
    SolverOptions opts;
    opts.tol = 1e-12;
    const auto q = solve_quantum(spin_prior(p), cons, opts);
    REQUIRE(s.converged);
    CHECK(s.multipliers[0] == doctest::Approx(q.multipliers[0]).epsilon(1e-8));
    CHECK(max_abs_diff(s.posterior.matrix(), q.posterior.matrix()) <= 1e-10);
  }
}
