#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "simproj/newton.hpp"
#include "test_util.hpp"

using namespace simproj;
using namespace simproj::test;

namespace {

Matrix rotation2(double theta) {
  return mat2(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
}

}  // namespace

TEST_CASE("residual of known points") {
  const SimplicialCone orthant = make_cone(Matrix::Identity(3, 3));
  SplitMix64 rng(1);
  const Vector z = random_normal_vector(3, rng);
  CHECK(residual(orthant, z, z).norm() <= 1e-15);

  const SimplicialCone shear = make_cone(mat2(1, 1, 0, 1));
  CHECK(residual(shear, vec({0, 1}), vec({-0.5, 0.5})).norm() <= 1e-15);
  CHECK(residual(shear, vec({0, 1}), Vector::Zero(2)).isApprox(vec({0, -1})));
  CHECK_THROWS_AS(residual(shear, vec({0, 1}), Vector::Zero(3)), DimensionMismatch);
}

TEST_CASE("iteration_matrix equals (B-I)diag(p)+I") {
  const SimplicialCone shear = make_cone(mat2(1, 1, 0, 1));
  CHECK(iteration_matrix(shear.gram(), SignPattern({0, 1})).isApprox(mat2(1, 1, 0, 2)));
  CHECK(iteration_matrix(shear.gram(), SignPattern({0, 0}))
            .isApprox(Matrix::Identity(2, 2)));

  SplitMix64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng.next() % 6);
    const SimplicialCone c(mixed_instance(m, trial, 70 + trial).generator);
    const SignPattern p =
        SignPattern::from_index(m, rng.next() % (std::uint64_t{1} << m));
    Vector diag(m);
    for (Index i = 0; i < m; ++i) diag(i) = p[i];
    const Matrix naive =
        (c.gram() - Matrix::Identity(m, m)) * diag.asDiagonal() + Matrix::Identity(m, m);
    CHECK(iteration_matrix(c.gram(), p).isApprox(naive, 1e-14));
  }
}

TEST_CASE("newton_step solves the pattern system") {
  const SimplicialCone orthant = make_cone(Matrix::Identity(2, 2));
  SplitMix64 rng(3);
  const Vector z = random_normal_vector(2, rng);
  CHECK(newton_step(orthant, z, random_normal_vector(2, rng)).isApprox(z));

  const SimplicialCone shear = make_cone(mat2(1, 1, 0, 1));
  CHECK(newton_step(shear, vec({0, 1}), vec({0, 1})).isApprox(vec({-0.5, 0.5})));
  // same pattern, so the same system: a fixed point
  CHECK(newton_step(shear, vec({0, 1}), vec({-0.5, 0.5})).isApprox(vec({-0.5, 0.5})));
}

TEST_CASE("solve handles the canonical cases") {
  const SimplicialCone orthant = make_cone(Matrix::Identity(2, 2));
  const SolveReport orthant_rep = solve(orthant, vec({1, -1}));
  CHECK(orthant_rep.status == SolveStatus::SignStable);
  CHECK(orthant_rep.iterations == 1);
  CHECK(orthant_rep.solution.isApprox(vec({1, -1})));
  CHECK(orthant_rep.projection.isApprox(vec({1, 0})));

  const SimplicialCone shear = make_cone(mat2(1, 1, 0, 1));

  // z = A(1,1) is interior
  const SolveReport interior = solve(shear, vec({2, 1}));
  CHECK(interior.status == SolveStatus::SignStable);
  CHECK(interior.solution.isApprox(vec({1, 1})));
  CHECK(interior.projection.isApprox(vec({2, 1})));

  // z in the polar cone projects to the apex
  const SolveReport polar = solve(shear, vec({-1, 1}));
  CHECK(polar.status == SolveStatus::SignStable);
  CHECK(polar.solution.isApprox(vec({-1, 0})));
  CHECK(polar.projection.norm() <= 1e-15);
  CHECK(polar.polar_part.isApprox(vec({-1, 1})));

  const SolveReport generic = solve(shear, vec({0, 1}));
  CHECK(generic.status == SolveStatus::SignStable);
  CHECK(generic.iterations == 1);
  CHECK(generic.solution.isApprox(vec({-0.5, 0.5})));
  CHECK(generic.projection.isApprox(vec({0.5, 0.5})));
  REQUIRE(generic.certificate.has_value());
  CHECK(generic.certificate->max_violation <= 1e-12);
}

TEST_CASE("solve report wiring") {
  const SimplicialCone shear = make_cone(mat2(1, 1, 0, 1));
  const Vector z = vec({0.3, -1.2});
  const SolveReport rep = solve(shear, z);
  REQUIRE(is_converged(rep.status));

  // projection is A·u⁺ exactly as computed
  const Vector recomputed = shear.generator() * Vector(positive_part(rep.solution));
  CHECK((rep.projection - recomputed).norm() == 0.0);
  CHECK(rep.trace.steps.size() == static_cast<std::size_t>(rep.iterations));
  for (const auto& step : rep.trace.steps) {
    CHECK(step.iterate.allFinite());
    CHECK(std::isfinite(step.residual_norm));
    CHECK(std::isfinite(step.step_norm));
    CHECK(step.pattern.size() == 2);
  }

  CHECK_THROWS_AS(solve(shear, Vector::Zero(3)), DimensionMismatch);
  SolverConfig bad;
  bad.max_iters = 0;
  CHECK_THROWS_AS(solve(shear, z, bad), BadParam);
  bad = SolverConfig{};
  bad.residual_tol = 0.0;
  CHECK_THROWS_AS(solve(shear, z, bad), BadParam);
  bad = SolverConfig{};
  bad.start = StartRule::Custom;
  CHECK_THROWS_AS(solve(shear, z, bad), DimensionMismatch);
  bad.custom_start = vec({5, 5});
  CHECK(is_converged(solve(shear, z, bad).status));
}

TEST_CASE("solve hits max_iters when the budget is too small") {
  const SimplicialCone shear = make_cone(mat2(1, 1, 0, 1));
  SolverConfig cfg;
  cfg.start = StartRule::Zero;
  cfg.max_iters = 1;
  const SolveReport rep = solve(shear, vec({0, 1}), cfg);
  CHECK(rep.status == SolveStatus::MaxIters);
  CHECK(rep.iterations == 1);
  CHECK_FALSE(rep.certificate.has_value());
}

TEST_CASE("newton_step reports numerical singularity on extreme conditioning") {
  // A = diag(1, 1e-8) passes the generator pivot check, but the pattern (0,1)
  // iteration matrix is diag(1, 1e-16), whose pivot is below threshold
  const SimplicialCone c = make_cone(Vector(vec({1.0, 1e-8})).asDiagonal());
  CHECK_THROWS_AS(newton_step(c, vec({1, 1}), vec({0, 1})), NumericalSingularity);
  CHECK(newton_step(c, vec({1, 1}), vec({1, 0})).allFinite());
}

TEST_CASE("iteration matrices factor for arbitrary patterns") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 1 + static_cast<int>(rng.next() % 8);
    const ProblemInstance inst = trial % 2 == 0
                                     ? generate(InstanceKind::IdentityPerturbed, m, 0.4,
                                                mix_seed(5, trial))
                                     : generate(InstanceKind::GramDefectTargeted, m, 0.3,
                                                mix_seed(6, trial));
    const SimplicialCone c(inst.generator);
    const SignPattern p =
        SignPattern::from_index(m, rng.next() % (std::uint64_t{1} << m));
    CHECK_NOTHROW(lu_factor(iteration_matrix(c.gram(), p)));
  }
}

TEST_CASE("sign-stable runs satisfy the residual bound and the certificate") {
  SplitMix64 rng(5);
  int converged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.next() % 8);
    const ProblemInstance inst = mixed_instance(m, trial, 80 + trial);
    const SimplicialCone c(inst.generator);
    const SolveReport rep = solve(c, inst.point);
    if (rep.status == SolveStatus::SignStable) {
      ++converged;
      const double target = 1e-10 * (1.0 + (c.generator().transpose() * inst.point).norm());
      CHECK(residual(c, inst.point, rep.solution).norm() <= target);
      CHECK_NOTHROW(moreau_verify(c, inst.point, rep.solution, 1e-8));
    }
  }
  CHECK(converged >= 190);
}

TEST_CASE("error ratios respect the contraction bound under the gram condition") {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + static_cast<int>(rng.next() % 7);
    const double target = rng.uniform_in(0.05, 0.3);
    const ProblemInstance inst =
        generate(InstanceKind::GramDefectTargeted, m, target, mix_seed(7, trial));
    const SimplicialCone c(inst.generator);
    const double b = c.gram_defect();
    REQUIRE(b < 1.0 / 3.0);
    const double bound = 2.0 * b / (1.0 - b) + 1e-6;

    SolverConfig cfg;
    cfg.start = StartRule::Zero;
    const SolveReport rep = solve(c, inst.point, cfg);
    REQUIRE(is_converged(rep.status));

    const Vector& u = rep.solution;
    Vector prev = rep.trace.start;
    for (const auto& step : rep.trace.steps) {
      const double before = (prev - u).norm();
      const double after = (step.iterate - u).norm();
      if (before > 1e-12) CHECK(after / before <= bound);
      prev = step.iterate;
    }
  }
}

TEST_CASE("a cycling instance is detected and stays bounded") {
  // Found by sweeping random instances: the pattern orbit
  // 111101 -> 111111 -> 000011 -> 110100 repeats. The gram defect is ~14.8,
  // far outside the sufficient condition, so nonconvergence is fair game.
  const ProblemInstance inst =
      generate(InstanceKind::RandomNonsingular, 6, 0.0, 830968607877359489ull);
  const SimplicialCone c(inst.generator);

  const SolveReport detected = solve(c, inst.point);
  CHECK(detected.status == SolveStatus::CycleDetected);
  CHECK(detected.iterations <= (1 << 6) + 1);
  CHECK_FALSE(detected.certificate.has_value());

  SolverConfig blind;
  blind.detect_cycles = false;
  blind.max_iters = 500;
  const SolveReport undetected = solve(c, inst.point, blind);
  CHECK(undetected.status == SolveStatus::MaxIters);
  CHECK(undetected.iterations == 500);
  for (const auto& step : undetected.trace.steps) {
    CHECK(step.iterate.allFinite());  // bounded even while cycling
  }
}

TEST_CASE("termination stays within the pattern budget") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.next() % 8);
    const ProblemInstance inst = mixed_instance(m, trial, 90 + trial);
    const SimplicialCone c(inst.generator);
    SolverConfig cfg;
    cfg.max_iters = 5000;
    const SolveReport rep = solve(c, inst.point, cfg);
    CHECK(rep.iterations <= (1 << m) + 1);
    CHECK(rep.solution.allFinite());
  }
}

TEST_CASE("the induced projection map is nonexpansive and idempotent") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng.next() % 6);
    const SimplicialCone c(mixed_instance(m, trial, 100 + trial).generator);
    const Vector z1 = 3.0 * random_normal_vector(m, rng);
    const Vector z2 = 3.0 * random_normal_vector(m, rng);
    const SolveReport r1 = solve(c, z1);
    const SolveReport r2 = solve(c, z2);
    REQUIRE(is_converged(r1.status));
    REQUIRE(is_converged(r2.status));
    CHECK((r1.projection - r2.projection).norm() <= (z1 - z2).norm() + 1e-8);

    const SolveReport r11 = solve(c, r1.projection);
    REQUIRE(is_converged(r11.status));
    CHECK((r11.projection - r1.projection).norm() <= 1e-8 * (1.0 + z1.norm()));
  }
}

TEST_CASE("check_sufficient_condition on known cones") {
  const SufficientConditionReport id = check_sufficient_condition(make_cone(Matrix::Identity(2, 2)));
  CHECK(id.defect == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(id.guaranteed);
  CHECK(id.rate_bound == doctest::Approx(0.0).epsilon(1e-12));

  const SufficientConditionReport shear = check_sufficient_condition(make_cone(mat2(1, 1, 0, 1)));
  CHECK(shear.defect == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-8));
  CHECK_FALSE(shear.guaranteed);
  CHECK(std::isinf(shear.rate_bound));

  const SufficientConditionReport scaled =
      check_sufficient_condition(make_cone(1.1 * rotation2(0.3)));
  CHECK(scaled.defect == doctest::Approx(0.21).epsilon(1e-8));
  CHECK(scaled.guaranteed);
  CHECK(scaled.rate_bound == doctest::Approx(2.0 * 0.21 / 0.79).epsilon(1e-7));
}

TEST_CASE("check_cc_condition enumerates every pattern") {
  const SimplicialCone orthant = make_cone(Matrix::Identity(2, 2));
  const CcConditionReport level = check_cc_condition(orthant, 0.01);
  CHECK(level.holds);
  CHECK(level.worst_norm <= 1e-12);

  const CcConditionReport scaled = check_cc_condition(make_cone(1.1 * rotation2(0.3)), 0.3);
  CHECK(scaled.holds);
  CHECK(scaled.worst_norm == doctest::Approx(0.21).epsilon(1e-7));

  const CcConditionReport shear = check_cc_condition(make_cone(mat2(1, 1, 0, 1)), 0.49);
  CHECK_FALSE(shear.holds);
  CHECK(shear.worst_norm == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-7));

  CHECK_THROWS_AS(check_cc_condition(orthant, 0.5), BadParam);
  CHECK_THROWS_AS(check_cc_condition(orthant, 0.0), BadParam);
  CHECK_THROWS_AS(check_cc_condition(make_cone(Matrix::Identity(21, 21)), 0.3),
                  DimensionTooLarge);
}
