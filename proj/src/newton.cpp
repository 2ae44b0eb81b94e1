#include "simproj/newton.hpp"

#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace simproj {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::SignStable:
      return "sign_stable";
    case SolveStatus::ResidualConverged:
      return "residual_converged";
    case SolveStatus::CycleDetected:
      return "cycle_detected";
    case SolveStatus::MaxIters:
      return "max_iters";
  }
  return "unknown";
}

bool is_converged(SolveStatus s) {
  return s == SolveStatus::SignStable || s == SolveStatus::ResidualConverged;
}

Matrix iteration_matrix(const Matrix& gram, const SignPattern& p) {
  const Index m = gram.rows();
  if (p.size() != m) {
    throw DimensionMismatch("iteration_matrix: pattern length does not match gram size");
  }
  Matrix c = Matrix::Identity(m, m);
  for (Index j = 0; j < m; ++j) {
    if (p[j]) c.col(j) = gram.col(j);
  }
  return c;
}

Vector pattern_solve(const Matrix& gram, const Vector& gram_rhs, const SignPattern& p) {
  const Matrix c = iteration_matrix(gram, p);
  try {
    return lu_solve(lu_factor(c), gram_rhs);
  } catch (const SingularMatrix& e) {
    std::ostringstream msg;
    msg << "iteration matrix for pattern " << p.to_string()
        << " is numerically singular (condition estimate >= 1e14): " << e.what();
    throw NumericalSingularity(msg.str());
  }
}

Vector residual(const SimplicialCone& c, const Vector& z, const Vector& x) {
  if (z.size() != c.dim() || x.size() != c.dim()) {
    throw DimensionMismatch("residual: vector length does not match cone dimension");
  }
  const Vector xp = positive_part(x);
  return (c.gram() - Matrix::Identity(c.dim(), c.dim())) * xp + x -
         c.generator().transpose() * z;
}

Vector newton_step(const SimplicialCone& c, const Vector& z, const Vector& x_k) {
  if (z.size() != c.dim() || x_k.size() != c.dim()) {
    throw DimensionMismatch("newton_step: vector length does not match cone dimension");
  }
  return pattern_solve(c.gram(), c.generator().transpose() * z, sign_pattern(x_k));
}

namespace {

Vector start_point(const SimplicialCone& c, const Vector& gram_rhs, const SolverConfig& cfg) {
  switch (cfg.start) {
    case StartRule::GramRhs:
      return gram_rhs;
    case StartRule::Zero:
      return Vector::Zero(c.dim());
    case StartRule::Custom:
      if (cfg.custom_start.size() != c.dim()) {
        throw DimensionMismatch("custom start length does not match cone dimension");
      }
      return cfg.custom_start;
  }
  return gram_rhs;
}

}  // namespace

SolveReport solve(const SimplicialCone& c, const Vector& z, const SolverConfig& cfg) {
  if (z.size() != c.dim()) {
    throw DimensionMismatch("solve: point length does not match cone dimension");
  }
  if (!(cfg.residual_tol > 0.0)) throw BadParam("residual_tol must be positive");
  if (cfg.max_iters < 1) throw BadParam("max_iters must be at least 1");

  const Vector gram_rhs = c.generator().transpose() * z;
  const double target = cfg.residual_tol * (1.0 + gram_rhs.norm());

  SolveReport report;
  Vector x = start_point(c, gram_rhs, cfg);
  SignPattern pat = sign_pattern(x);
  report.trace.start = x;

  // pattern -> first iteration index it appeared at
  std::map<SignPattern, int> seen;
  seen.emplace(pat, 0);

  bool done = false;
  for (int k = 0; k < cfg.max_iters && !done; ++k) {
    Vector x_next = pattern_solve(c.gram(), gram_rhs, pat);
    SignPattern pat_next = sign_pattern(x_next);
    const double res_norm = residual(c, z, x_next).norm();
    const double step_norm = (x_next - x).norm();
    report.trace.steps.push_back({x_next, pat_next, res_norm, step_norm});
    report.iterations = k + 1;

    if (pat_next == pat) {
      if (res_norm <= target) {
        report.status = SolveStatus::SignStable;
        done = true;
      }
      // a stable pattern whose residual misses the target reproduces the
      // same solve; fall through to MaxIters rather than report success
    } else if (res_norm <= target) {
      report.status = SolveStatus::ResidualConverged;
      done = true;
    } else if (cfg.detect_cycles && seen.count(pat_next) > 0) {
      report.status = SolveStatus::CycleDetected;
      done = true;
    } else {
      seen.emplace(pat_next, k + 1);
    }

    x = std::move(x_next);
    pat = std::move(pat_next);
  }

  report.solution = x;
  report.projection = c.generator() * positive_part(x);
  report.polar_part = -lu_solve(c.transpose_lu(), Vector(negative_part(x)));
  if (is_converged(report.status)) {
    report.certificate = moreau_certificate(c, z, x);
  }
  return report;
}

SufficientConditionReport check_sufficient_condition(const SimplicialCone& c) {
  SufficientConditionReport r;
  r.defect = c.gram_defect();
  r.guaranteed = r.defect < 1.0 / 3.0;
  r.rate_bound = r.guaranteed ? 2.0 * r.defect / (1.0 - r.defect)
                              : std::numeric_limits<double>::infinity();
  return r;
}

CcConditionReport check_cc_condition(const SimplicialCone& c, double a) {
  if (!(a > 0.0 && a < 0.5)) throw BadParam("cc condition requires 0 < a < 1/2");
  const Index m = c.dim();
  if (m > 20) {
    throw DimensionTooLarge("cc condition enumerates 2^m patterns; m must be <= 20");
  }
  const Matrix gram_minus_i = c.gram() - Matrix::Identity(m, m);

  CcConditionReport r;
  r.worst_norm = -1.0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const SignPattern p = SignPattern::from_index(m, idx);
    const LuFactors f = lu_factor(iteration_matrix(c.gram(), p));
    const double norm = spectral_norm(lu_solve_matrix(f, gram_minus_i));
    if (norm > r.worst_norm) {
      r.worst_norm = norm;
      r.worst_pattern = p;
    }
  }
  r.holds = r.worst_norm < a;
  return r;
}

}  // namespace simproj
