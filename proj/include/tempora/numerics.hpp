#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "tempora/types.hpp"

namespace tempora {

template <typename Scalar>
struct SymEig {
  Vector<Scalar> values;   // ascending
  Matrix<Scalar> vectors;  // columns, orthonormal
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Derived>
typename Derived::Scalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? typename Derived::Scalar(0) : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m, double rel_tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  const auto scale = std::max<typename Derived::Scalar>(1, max_abs(m));
  return max_abs(m - m.transpose()) <= rel_tol * scale;
}

template <typename Derived>
auto symmetrize(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> s = (m + m.transpose()) / Scalar(2);
  return s;
}

template <typename Derived>
SymEig<typename Derived::Scalar> sym_eig(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (!all_finite(m)) throw NumericalError("sym_eig: non-finite input");
  if (m.rows() != m.cols()) throw InputError("sym_eig: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(symmetrize(m));
  if (solver.info() != Eigen::Success) throw NumericalError("sym_eig: no convergence");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Derived>
typename Derived::Scalar min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0) return Scalar(0);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(symmetrize(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("min_eigenvalue: no convergence");
  return solver.eigenvalues()(0);
}

// Nearest PSD matrix in Frobenius norm: clip negative eigenvalues to zero.
template <typename Derived>
Matrix<typename Derived::Scalar> psd_project(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto eig = sym_eig(m);
  const Vector<Scalar> clipped = eig.values.cwiseMax(Scalar(0));
  Matrix<Scalar> out = eig.vectors * clipped.asDiagonal() * eig.vectors.transpose();
  return symmetrize(out);
}

// Factor F (rank x n) with F^T F = m, keeping eigenvalues above
// rank_tol * (largest eigenvalue).
template <typename Derived>
Matrix<typename Derived::Scalar> sqrt_psd(const Eigen::MatrixBase<Derived>& m,
                                          double rank_tol = 1e-8) {
  using Scalar = typename Derived::Scalar;
  const auto eig = sym_eig(m);
  const Eigen::Index n = eig.values.size();
  if (n == 0) return Matrix<Scalar>(0, 0);
  const Scalar top = std::max<Scalar>(eig.values(n - 1), Scalar(0));
  if (eig.values(0) < -1e-6 * std::max<Scalar>(top, Scalar(1))) {
    throw NumericalError("sqrt_psd: matrix is indefinite (min eigenvalue " +
                         std::to_string(static_cast<double>(eig.values(0))) + ")");
  }
  const Scalar cut = rank_tol * top;
  Eigen::Index rank = 0;
  while (rank < n && eig.values(n - 1 - rank) > cut) ++rank;
  Matrix<Scalar> f(rank, n);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const Eigen::Index col = n - 1 - k;
    f.row(k) = std::sqrt(eig.values(col)) * eig.vectors.col(col).transpose();
  }
  return f;
}

template <typename DerivedA, typename DerivedB>
Vector<typename DerivedA::Scalar> solve_linear(const Eigen::MatrixBase<DerivedA>& a,
                                               const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw InputError("solve_linear: dimension mismatch");
  }
  Eigen::LLT<Matrix<Scalar>> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("solve_linear: matrix is not positive definite");
  }
  return llt.solve(b);
}

}  // namespace tempora
