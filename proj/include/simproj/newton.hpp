#pragma once

#include <optional>
#include <vector>

#include "simproj/cone.hpp"

namespace simproj {

enum class StartRule { GramRhs, Zero, Custom };

struct SolverConfig {
  double residual_tol = 1e-10;  // relative to 1 + ‖Aᵀz‖
  int max_iters = 200;
  StartRule start = StartRule::GramRhs;
  Vector custom_start{};
  bool detect_cycles = true;
};

enum class SolveStatus { SignStable, ResidualConverged, CycleDetected, MaxIters };

const char* to_string(SolveStatus s);
bool is_converged(SolveStatus s);

struct IterationRecord {
  Vector iterate;
  SignPattern pattern;
  double residual_norm;
  double step_norm;
};

struct NewtonTrace {
  Vector start;
  std::vector<IterationRecord> steps;
};

struct SolveReport {
  Vector solution;    // u
  Vector projection;  // A·u⁺
  Vector polar_part;  // −(Aᵀ)⁻¹·u⁻
  SolveStatus status = SolveStatus::MaxIters;
  int iterations = 0;
  NewtonTrace trace;
  std::optional<MoreauCertificate> certificate;  // set on converged statuses
};

/// (B−I)·diag(p) + I: column j is B.col(j) where p_j = 1 and e_j elsewhere.
Matrix iteration_matrix(const Matrix& gram, const SignPattern& p);

/// Solves ((B−I)·diag(p)+I)·x = gram_rhs for one sign pattern.
/// Throws NumericalSingularity when the factorization breaks down.
Vector pattern_solve(const Matrix& gram, const Vector& gram_rhs, const SignPattern& p);

/// F(x) = (B−I)x⁺ + x − Aᵀz.
Vector residual(const SimplicialCone& c, const Vector& z, const Vector& x);

/// One iteration: solve ((B−I)·diag(sgn(x_k⁺))+I)·x = Aᵀz.
Vector newton_step(const SimplicialCone& c, const Vector& z, const Vector& x_k);

/// Semi-smooth Newton iteration. Termination, in priority order: the sign
/// pattern repeats between consecutive iterates (exact solve), the residual
/// drops below tol, a pattern recurs from a non-adjacent iteration, or the
/// iteration budget runs out.
SolveReport solve(const SimplicialCone& c, const Vector& z, const SolverConfig& cfg = {});

struct SufficientConditionReport {
  double defect = 0.0;      // ‖AᵀA − I‖
  bool guaranteed = false;  // defect < 1/3
  double rate_bound = 0.0;  // 2·defect/(1−defect) when guaranteed, +inf otherwise
};

/// Linear-convergence guarantee from the Gram defect alone.
SufficientConditionReport check_sufficient_condition(const SimplicialCone& c);

struct CcConditionReport {
  bool holds = false;
  SignPattern worst_pattern;
  double worst_norm = 0.0;
};

/// Checks ‖((B−I)G+I)⁻¹(B−I)‖ < a over all 2^m diagonal 0/1 matrices G.
/// Requires 0 < a < 1/2 and m ≤ 20.
CcConditionReport check_cc_condition(const SimplicialCone& c, double a);

}  // namespace simproj
