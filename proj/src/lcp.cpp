#include "simproj/lcp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace simproj {

const char* to_string(LcpStatus s) {
  switch (s) {
    case LcpStatus::Solved:
      return "solved";
    case LcpStatus::RayTermination:
      return "ray_termination";
    case LcpStatus::PivotLimit:
      return "pivot_limit";
  }
  return "unknown";
}

LcpProblem from_projection(const SimplicialCone& c, const Vector& z) {
  if (z.size() != c.dim()) {
    throw DimensionMismatch("from_projection: point length does not match cone");
  }
  return {c.gram(), -(c.generator().transpose() * z)};
}

namespace {

// Gauss-Jordan pivot; tiny negatives in the q column are roundoff and get
// clamped so later ratio tests see a feasible basis.
void pivot(Matrix& t, Index row, Index col) {
  t.row(row) /= t(row, col);
  for (Index i = 0; i < t.rows(); ++i) {
    if (i != row && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(row);
  }
  const Index q_col = t.cols() - 1;
  t.col(q_col) = t.col(q_col).cwiseMax(0.0);
}

// lexicographic comparison of rows scaled by the driving column, over the
// initial identity block (the running basis inverse)
bool lex_less(const Matrix& t, Index i1, Index i2, Index driving, Index n) {
  const double d1 = t(i1, driving);
  const double d2 = t(i2, driving);
  for (Index j = 0; j < n; ++j) {
    const double a = t(i1, j) / d1;
    const double b = t(i2, j) / d2;
    if (a < b) return true;
    if (a > b) return false;
  }
  return i1 < i2;
}

}  // namespace

LcpSolution lemke_solve(const LcpProblem& p, int pivot_limit) {
  const Index n = p.q.size();
  if (p.m_matrix.rows() != n || p.m_matrix.cols() != n) {
    throw DimensionMismatch("lemke_solve: M and q dimensions do not match");
  }
  if (pivot_limit < 1) throw BadParam("pivot_limit must be at least 1");

  LcpSolution sol;
  if ((p.q.array() >= 0.0).all()) {
    sol.u = Vector::Zero(n);
    sol.v = p.q;
    return sol;
  }

  // columns: w_0..w_{n-1} | z_0..z_{n-1} | z0 | q
  const Index z0_col = 2 * n;
  const Index q_col = 2 * n + 1;
  Matrix t(n, 2 * n + 2);
  t.leftCols(n) = Matrix::Identity(n, n);
  t.middleCols(n, n) = -p.m_matrix;
  t.col(z0_col) = -Vector::Ones(n);
  t.col(q_col) = p.q;
  Eigen::VectorXi basis = Eigen::VectorXi::LinSpaced(n, 0, static_cast<int>(n) - 1);

  const auto read_off = [&] {
    sol.u = Vector::Zero(n);
    sol.v = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      const Index var = basis(i);
      if (var < n) {
        sol.v(var) = t(i, q_col);
      } else if (var < 2 * n) {
        sol.u(var - n) = t(i, q_col);
      }
    }
  };

  // artificial variable enters at the most negative q component
  Index leave_row = 0;
  t.col(q_col).minCoeff(&leave_row);
  pivot(t, leave_row, z0_col);
  basis(leave_row) = static_cast<int>(z0_col);
  sol.pivots = 1;
  Index driving = n + leave_row;  // complement of the w that just left

  while (true) {
    if (sol.pivots >= pivot_limit) {
      sol.status = LcpStatus::PivotLimit;
      std::ostringstream note;
      note << "pivot limit " << pivot_limit << " reached with driving column " << driving;
      sol.note = note.str();
      read_off();
      return sol;
    }

    Index ray_guard = -1;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      if (t(i, driving) > 1e-12) {
        const double ratio = t(i, q_col) / t(i, driving);
        if (ratio < min_ratio) {
          min_ratio = ratio;
          ray_guard = i;
        }
      }
    }
    if (ray_guard < 0) {
      sol.status = LcpStatus::RayTermination;
      std::ostringstream note;
      note << "ray termination: no positive entry in driving column " << driving
           << " after " << sol.pivots << " pivots";
      sol.note = note.str();
      read_off();
      return sol;
    }

    // tie set around the minimum ratio; z0 leaves whenever it can,
    // otherwise break ties lexicographically
    const double tie_tol = 1e-9 * (1.0 + std::abs(min_ratio));
    Index row = -1;
    for (Index i = 0; i < n; ++i) {
      if (t(i, driving) <= 1e-12) continue;
      if (t(i, q_col) / t(i, driving) > min_ratio + tie_tol) continue;
      if (basis(i) == static_cast<int>(z0_col)) {
        row = i;
        break;
      }
      if (row < 0 || lex_less(t, i, row, driving, n)) row = i;
    }

    const Index leaving = basis(row);
    pivot(t, row, driving);
    basis(row) = static_cast<int>(driving);
    ++sol.pivots;

    if (leaving == z0_col) {
      sol.status = LcpStatus::Solved;
      read_off();
      return sol;
    }
    driving = leaving < n ? leaving + n : leaving - n;
  }
}

ProjectionFromLcp to_solution(const LcpSolution& sol, const SimplicialCone& c) {
  if (sol.status != LcpStatus::Solved) {
    throw NotSolved(std::string("lcp status is ") + to_string(sol.status));
  }
  if (sol.u.size() != c.dim()) {
    throw DimensionMismatch("to_solution: solution length does not match cone");
  }
  return {sol.u - sol.v, c.generator() * sol.u};
}

}  // namespace simproj
