#include "simproj/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace simproj {

namespace {

constexpr double kPivotRelTol = 1e-14;

}  // namespace

LuFactors lu_factor(const Matrix& a) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << "lu_factor needs a square matrix, got " << a.rows() << "x" << a.cols();
    throw NonSquare(msg.str());
  }
  const Index m = a.rows();
  const double limit = kPivotRelTol * a.cwiseAbs().maxCoeff();

  Matrix lu = a;
  Eigen::VectorXi perm = Eigen::VectorXi::LinSpaced(m, 0, static_cast<int>(m) - 1);
  int sign = 1;

  for (Index k = 0; k < m; ++k) {
    Index rel = 0;
    const double pv = lu.col(k).segment(k, m - k).cwiseAbs().maxCoeff(&rel);
    const Index p = k + rel;
    if (!(pv > limit)) {
      std::ostringstream msg;
      msg << "singular matrix: pivot " << pv << " at column " << k
          << " below threshold " << limit;
      throw SingularMatrix(msg.str());
    }
    if (p != k) {
      lu.row(p).swap(lu.row(k));
      std::swap(perm(p), perm(k));
      sign = -sign;
    }
    for (Index i = k + 1; i < m; ++i) {
      lu(i, k) /= lu(k, k);
      lu.row(i).tail(m - k - 1) -= lu(i, k) * lu.row(k).tail(m - k - 1);
    }
  }

  LuFactors f;
  f.lower = Matrix::Identity(m, m);
  f.lower.triangularView<Eigen::StrictlyLower>() = lu;
  f.upper = lu.triangularView<Eigen::Upper>();
  f.perm = std::move(perm);
  f.sign = sign;
  return f;
}

Vector lu_solve(const LuFactors& f, const Vector& rhs) {
  const Index m = f.lower.rows();
  if (rhs.size() != m) {
    throw DimensionMismatch("lu_solve rhs length does not match factor size");
  }
  Vector x(m);
  for (Index i = 0; i < m; ++i) x(i) = rhs(f.perm(i));
  f.lower.triangularView<Eigen::UnitLower>().solveInPlace(x);
  f.upper.triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

Matrix lu_solve_matrix(const LuFactors& f, const Matrix& rhs) {
  const Index m = f.lower.rows();
  if (rhs.rows() != m) {
    throw DimensionMismatch("lu_solve rhs rows do not match factor size");
  }
  Matrix x(m, rhs.cols());
  for (Index i = 0; i < m; ++i) x.row(i) = rhs.row(f.perm(i));
  f.lower.triangularView<Eigen::UnitLower>().solveInPlace(x);
  f.upper.triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Index n = m.cols();

  // all-ones start with a fixed ramp perturbation to break symmetry
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    v(i) = 1.0 + 0.5 * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  v.normalize();

  const int cap = static_cast<int>(10 * n + 100);
  double sigma = 0.0;
  for (int iter = 0; iter < cap; ++iter) {
    const Vector w = m * v;
    const double next = std::sqrt(w.squaredNorm());
    const Vector y = m.transpose() * w;
    const double yn = y.norm();
    if (yn == 0.0) return next;
    if (std::abs(next - sigma) <= 1e-13 * next) return next;
    sigma = next;
    v = y / yn;
  }
  return sigma;
}

double banach_inverse_bound(const Matrix& e) {
  if (e.rows() != e.cols()) {
    throw NonSquare("banach_inverse_bound needs a square matrix");
  }
  const double norm_e = spectral_norm(e);
  if (norm_e >= 1.0) {
    std::ostringstream msg;
    msg << "banach_inverse_bound requires ||E|| < 1, got " << norm_e;
    throw NormTooLarge(msg.str());
  }
  const Index m = e.rows();
  const LuFactors f = lu_factor(e - Matrix::Identity(m, m));
  const Matrix rhs = Matrix::Identity(m, m);
  return spectral_norm(lu_solve_matrix(f, rhs));
}

Matrix orthonormal_factor(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  const Index n = std::min(m.rows(), m.cols());
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace simproj
