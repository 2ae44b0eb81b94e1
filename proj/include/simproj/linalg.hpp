#pragma once

#include "simproj/types.hpp"

namespace simproj {

/// Partial-pivoting LU of a square matrix: PA = LU with unit-diagonal L.
/// Row i of PA is row perm(i) of A.
struct LuFactors {
  Matrix lower;
  Matrix upper;
  Eigen::VectorXi perm;
  int sign = 1;  // parity of perm
};

/// Throws SingularMatrix when a pivot falls below 1e-14 * max|a_ij|.
LuFactors lu_factor(const Matrix& a);

Vector lu_solve(const LuFactors& f, const Vector& rhs);
Matrix lu_solve_matrix(const LuFactors& f, const Matrix& rhs);

/// Largest singular value via power iteration on MᵀM. Deterministic: fixed
/// ramp starting vector, iteration cap 10*cols + 100. Zero matrix gives 0.
double spectral_norm(const Matrix& m);

/// Computed ‖(E−I)⁻¹‖ for ‖E‖ < 1; throws NormTooLarge otherwise.
/// Banach's lemma bounds the result by 1/(1−‖E‖).
double banach_inverse_bound(const Matrix& e);

/// Orthogonal factor of the QR decomposition, columns flipped so the
/// corresponding diagonal of R is nonnegative.
Matrix orthonormal_factor(const Matrix& m);

template <typename Derived>
auto positive_part(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseMax(typename Derived::Scalar(0));
}

/// x⁻ = x⁺ − x componentwise, so x = x⁺ − x⁻ holds exactly in floating point.
template <typename Derived>
auto negative_part(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseMax(typename Derived::Scalar(0)) - x;
}

}  // namespace simproj
