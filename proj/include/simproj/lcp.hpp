#pragma once

#include <string>

#include "simproj/cone.hpp"

namespace simproj {

/// LCP(M, q): find u ≥ 0, v = Mu + q ≥ 0 with ⟨u, v⟩ = 0.
struct LcpProblem {
  Matrix m_matrix;  // M = AᵀA for projection problems
  Vector q;         // −Aᵀz
};

enum class LcpStatus { Solved, RayTermination, PivotLimit };

const char* to_string(LcpStatus s);

struct LcpSolution {
  Vector u;  // x⁺ for projection problems
  Vector v;  // x⁻
  int pivots = 0;
  LcpStatus status = LcpStatus::Solved;
  std::string note;  // tableau diagnostics on failure statuses
};

/// (M, q) = (AᵀA, −Aᵀz); the complementary solution is (x⁺, x⁻).
LcpProblem from_projection(const SimplicialCone& c, const Vector& z);

/// Lemke complementary pivoting with all-ones covering vector and
/// lexicographic tie-breaking on the leaving variable. Failure modes come
/// back as statuses, not exceptions.
LcpSolution lemke_solve(const LcpProblem& p, int pivot_limit);

struct ProjectionFromLcp {
  Vector x;           // u − v
  Vector projection;  // A·u
};

/// Throws NotSolved unless sol.status == Solved.
ProjectionFromLcp to_solution(const LcpSolution& sol, const SimplicialCone& c);

}  // namespace simproj
