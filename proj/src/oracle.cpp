#include "simproj/oracle.hpp"

#include <cmath>
#include <limits>

namespace simproj {

OracleResult enumerate_project(const SimplicialCone& c, const Vector& z) {
  const Index m = c.dim();
  if (z.size() != m) {
    throw DimensionMismatch("enumerate_project: point length does not match cone");
  }
  if (m > 12) {
    throw DimensionTooLarge("enumerate_project caps at m = 12 (2^m systems)");
  }
  const Vector gram_rhs = c.generator().transpose() * z;

  OracleResult result;
  double best_residual = std::numeric_limits<double>::infinity();
  const std::uint64_t total = std::uint64_t{1} << m;

  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const SignPattern p = SignPattern::from_index(m, idx);
    ++result.candidates_tested;
    Vector x;
    try {
      x = pattern_solve(c.gram(), gram_rhs, p);
    } catch (const NumericalSingularity&) {
      continue;
    }

    const double band = 1e-9 * (1.0 + x.norm());
    bool consistent = true;
    for (Index i = 0; i < m && consistent; ++i) {
      consistent = p[i] ? x(i) >= -band : x(i) <= band;
    }
    if (!consistent) continue;

    ++result.consistent_count;
    const double res = residual(c, z, x).norm();
    if (res < best_residual) {
      best_residual = res;
      result.solution = x;
      result.pattern = p;
    }
  }

  if (result.consistent_count == 0) {
    throw NoConsistentPattern(
        "no sign pattern was consistent; tolerance failure in enumeration");
  }
  result.projection = c.generator() * positive_part(result.solution);
  return result;
}

bool verify_kkt(const SimplicialCone& c, const Vector& z, const Vector& p, double tol) {
  if (z.size() != c.dim() || p.size() != c.dim()) {
    throw DimensionMismatch("verify_kkt: vector length does not match cone");
  }
  if (!contains(c, p, tol)) return false;
  const Vector residual_part = z - p;
  if (!polar_contains(c, residual_part, tol)) return false;
  return std::abs(p.dot(residual_part)) <= tol * (1.0 + p.norm() * residual_part.norm());
}

}  // namespace simproj
