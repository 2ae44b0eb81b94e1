#pragma once

#include <cstdint>

#include "simproj/newton.hpp"

namespace simproj {

struct OracleResult {
  Vector solution;    // u
  Vector projection;  // A·u⁺
  SignPattern pattern;
  std::uint64_t candidates_tested = 0;
  int consistent_count = 0;
};

/// Ground-truth projection by enumerating all 2^m sign patterns and solving
/// the per-pattern linear system. Requires m ≤ 12. Among consistent
/// candidates the smallest residual wins, ties go to the lexicographically
/// smallest pattern.
OracleResult enumerate_project(const SimplicialCone& c, const Vector& z);

/// Moreau characterization of a claimed projection p: p ∈ K, z−p ∈ K°, and
/// ⟨p, z−p⟩ = 0, each within tol. Independent of any solver state.
bool verify_kkt(const SimplicialCone& c, const Vector& z, const Vector& p, double tol);

}  // namespace simproj
