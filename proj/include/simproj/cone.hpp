#pragma once

#include "simproj/linalg.hpp"

namespace simproj {

/// Simplicial cone K = A·R^m₊ for a nonsingular generator matrix A, with
/// cached factorizations of A and Aᵀ, the Gram matrix B = AᵀA and the
/// contraction defect ‖B − I‖.
class SimplicialCone {
 public:
  /// Throws SingularGenerator when A does not factor.
  explicit SimplicialCone(Matrix generator);

  Index dim() const { return generator_.rows(); }
  const Matrix& generator() const { return generator_; }
  const Matrix& gram() const { return gram_; }
  double gram_defect() const { return gram_defect_; }
  const LuFactors& generator_lu() const { return lu_a_; }
  const LuFactors& transpose_lu() const { return lu_at_; }

 private:
  Matrix generator_;
  LuFactors lu_a_;
  LuFactors lu_at_;
  Matrix gram_;
  double gram_defect_ = 0.0;
};

SimplicialCone make_cone(const Matrix& a);

/// Columns generate the polar cone K° = −(Aᵀ)⁻¹·R^m₊.
Matrix polar_generators(const SimplicialCone& c);

/// y ∈ K iff the coordinates A⁻¹y are nonnegative up to tol·(1+‖y‖).
bool contains(const SimplicialCone& c, const Vector& y, double tol);

/// y ∈ K° iff ⟨y, a_i⟩ ≤ tol·(1+‖y‖‖a_i‖) for every generator column.
/// Uses the inner-product definition, not the polar generator formula.
bool polar_contains(const SimplicialCone& c, const Vector& y, double tol);

struct MoreauCertificate {
  Vector point;   // z
  Vector primal;  // A·x⁺, the claimed projection onto K
  Vector polar;   // −(Aᵀ)⁻¹·x⁻, the claimed projection onto K°
  double decomposition_error = 0.0;  // ‖z − primal − polar‖
  double orthogonality_error = 0.0;  // |⟨primal, polar⟩| scaled
  double primal_violation = 0.0;     // K-membership defect of primal, scaled
  double polar_violation = 0.0;      // K°-membership defect of polar, scaled
  double max_violation = 0.0;
  const char* worst_check = "";
};

MoreauCertificate moreau_certificate(const SimplicialCone& c, const Vector& z,
                                     const Vector& x);

/// Throws CertificateRejected naming the worst check when max_violation > tol.
MoreauCertificate moreau_verify(const SimplicialCone& c, const Vector& z,
                                const Vector& x, double tol);

}  // namespace simproj
