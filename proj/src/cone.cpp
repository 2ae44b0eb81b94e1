#include "simproj/cone.hpp"

#include <algorithm>
#include <cmath>

namespace simproj {

SimplicialCone::SimplicialCone(Matrix generator) : generator_(std::move(generator)) {
  if (generator_.rows() != generator_.cols()) {
    throw SingularGenerator("generator must be square");
  }
  if (generator_.size() == 0) {
    throw SingularGenerator("generator must be at least 1x1");
  }
  try {
    lu_a_ = lu_factor(generator_);
    lu_at_ = lu_factor(generator_.transpose());
  } catch (const SingularMatrix& e) {
    throw SingularGenerator(std::string("generator is singular: ") + e.what());
  }
  gram_ = generator_.transpose() * generator_;
  gram_defect_ = spectral_norm(gram_ - Matrix::Identity(dim(), dim()));
}

SimplicialCone make_cone(const Matrix& a) { return SimplicialCone(a); }

Matrix polar_generators(const SimplicialCone& c) {
  const Matrix identity = Matrix::Identity(c.dim(), c.dim());
  return -lu_solve_matrix(c.transpose_lu(), identity);
}

bool contains(const SimplicialCone& c, const Vector& y, double tol) {
  if (y.size() != c.dim()) {
    throw DimensionMismatch("contains: vector length does not match cone dimension");
  }
  const Vector w = lu_solve(c.generator_lu(), y);
  return (w.array() >= -tol * (1.0 + y.norm())).all();
}

bool polar_contains(const SimplicialCone& c, const Vector& y, double tol) {
  if (y.size() != c.dim()) {
    throw DimensionMismatch("polar_contains: vector length does not match cone dimension");
  }
  const double yn = y.norm();
  for (Index j = 0; j < c.dim(); ++j) {
    const auto col = c.generator().col(j);
    if (y.dot(col) > tol * (1.0 + yn * col.norm())) return false;
  }
  return true;
}

namespace {

// membership defect of y in K, scaled by 1 + ‖y‖
double primal_defect(const SimplicialCone& c, const Vector& y) {
  const Vector w = lu_solve(c.generator_lu(), y);
  const double worst = std::max(0.0, (-w).maxCoeff());
  return worst / (1.0 + y.norm());
}

// membership defect of y in K°, scaled per generator column
double polar_defect(const SimplicialCone& c, const Vector& y) {
  const double yn = y.norm();
  double worst = 0.0;
  for (Index j = 0; j < c.dim(); ++j) {
    const auto col = c.generator().col(j);
    worst = std::max(worst, y.dot(col) / (1.0 + yn * col.norm()));
  }
  return worst;
}

}  // namespace

MoreauCertificate moreau_certificate(const SimplicialCone& c, const Vector& z,
                                     const Vector& x) {
  if (z.size() != c.dim() || x.size() != c.dim()) {
    throw DimensionMismatch("moreau_certificate: vector length does not match cone");
  }
  MoreauCertificate cert;
  cert.point = z;
  const Vector xp = positive_part(x);
  const Vector xm = negative_part(x);
  cert.primal = c.generator() * xp;
  cert.polar = -lu_solve(c.transpose_lu(), xm);

  cert.decomposition_error = (z - cert.primal - cert.polar).norm();
  cert.orthogonality_error = std::abs(cert.primal.dot(cert.polar)) /
                             (1.0 + cert.primal.norm() * cert.polar.norm());
  cert.primal_violation = primal_defect(c, cert.primal);
  cert.polar_violation = polar_defect(c, cert.polar);

  cert.max_violation = cert.decomposition_error;
  cert.worst_check = "decomposition";
  const auto consider = [&cert](double v, const char* name) {
    if (v > cert.max_violation) {
      cert.max_violation = v;
      cert.worst_check = name;
    }
  };
  consider(cert.orthogonality_error, "orthogonality");
  consider(cert.primal_violation, "primal_membership");
  consider(cert.polar_violation, "polar_membership");
  return cert;
}

MoreauCertificate moreau_verify(const SimplicialCone& c, const Vector& z,
                                const Vector& x, double tol) {
  MoreauCertificate cert = moreau_certificate(c, z, x);
  if (cert.max_violation > tol) {
    throw CertificateRejected(cert.worst_check, cert.max_violation, tol);
  }
  return cert;
}

}  // namespace simproj
