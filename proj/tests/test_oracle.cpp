#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "simproj/oracle.hpp"
#include "test_util.hpp"

using namespace simproj;
using namespace simproj::test;

TEST_CASE("enumerate_project on known instances") {
  const SimplicialCone orthant = make_cone(Matrix::Identity(2, 2));
  const OracleResult r1 = enumerate_project(orthant, vec({1, -1}));
  CHECK(r1.pattern == SignPattern({1, 0}));
  CHECK(r1.solution.isApprox(vec({1, -1})));
  CHECK(r1.projection.isApprox(vec({1, 0})));
  CHECK(r1.candidates_tested == 4);
  CHECK(r1.consistent_count == 1);

  const SimplicialCone shear = make_cone(mat2(1, 1, 0, 1));
  const OracleResult r2 = enumerate_project(shear, vec({0, 1}));
  CHECK(r2.pattern == SignPattern({0, 1}));
  CHECK(r2.solution.isApprox(vec({-0.5, 0.5})));
  CHECK(r2.projection.isApprox(vec({0.5, 0.5})));
  CHECK(r2.consistent_count == 1);

  // z in the polar cone: u_2 = 0 sits on the boundary, so two patterns agree
  const OracleResult r3 = enumerate_project(shear, vec({-1, 1}));
  CHECK(r3.pattern == SignPattern({0, 0}));
  CHECK(r3.solution.isApprox(vec({-1, 0})));
  CHECK(r3.projection.norm() <= 1e-15);
  CHECK(r3.consistent_count == 2);

  CHECK_THROWS_AS(enumerate_project(make_cone(Matrix::Identity(13, 13)), Vector::Zero(13)),
                  DimensionTooLarge);
  CHECK_THROWS_AS(enumerate_project(shear, Vector::Zero(3)), DimensionMismatch);
}

TEST_CASE("nondegenerate instances have exactly one consistent pattern") {
  SplitMix64 rng(12);
  int nondegenerate = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng.next() % 8);
    const ProblemInstance inst = mixed_instance(m, trial, 200 + trial);
    const SimplicialCone c(inst.generator);
    const OracleResult res = enumerate_project(c, inst.point);
    CHECK(res.consistent_count >= 1);
    if (res.solution.cwiseAbs().minCoeff() > 1e-6) {
      ++nondegenerate;
      CHECK(res.consistent_count == 1);
    }
  }
  CHECK(nondegenerate > 50);  // random data is almost never degenerate
}

TEST_CASE("verify_kkt accepts true projections and rejects wrong ones") {
  const SimplicialCone orthant = make_cone(Matrix::Identity(2, 2));
  CHECK(verify_kkt(orthant, vec({1, -1}), vec({1, 0}), 1e-10));
  CHECK_FALSE(verify_kkt(orthant, vec({1, 1}), vec({0, 0}), 1e-10));
  CHECK_FALSE(verify_kkt(orthant, vec({1, -1}), vec({1, -1}), 1e-10));

  const SimplicialCone shear = make_cone(mat2(1, 1, 0, 1));
  CHECK(verify_kkt(shear, vec({0, 1}), vec({0.5, 0.5}), 1e-10));
  // right set, wrong point: membership holds but orthogonality fails
  CHECK_FALSE(verify_kkt(shear, vec({0, 1}), vec({2, 1}), 1e-10));
}

TEST_CASE("oracle output always passes verify_kkt") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng.next() % 8);
    const ProblemInstance inst = mixed_instance(m, trial, 300 + trial);
    const SimplicialCone c(inst.generator);
    const OracleResult res = enumerate_project(c, inst.point);
    CHECK(verify_kkt(c, inst.point, res.projection, 1e-8));
  }
}

TEST_CASE("no sampled feasible point beats the oracle distance") {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + static_cast<int>(rng.next() % 6);
    const ProblemInstance inst = mixed_instance(m, trial, 400 + trial);
    const SimplicialCone c(inst.generator);
    const OracleResult res = enumerate_project(c, inst.point);
    const double best = (inst.point - res.projection).norm();
    for (int s = 0; s < 200; ++s) {
      const Vector y = c.generator() * (rng.uniform_in(0.0, 3.0) * random_nonneg_vector(m, rng));
      CHECK(best <= (inst.point - y).norm() + 1e-8);
    }
  }
}
