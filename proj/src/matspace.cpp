#include "rigid/matspace.hpp"

#include "rigid/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rigid {

Vector vec(const Matrix& A) { return Eigen::Map<const Vector>(A.data(), A.size()); }

Matrix unvec(const Vector& v, int m, int n) {
  require(v.size() == static_cast<Eigen::Index>(m) * n, "vector length does not match matrix shape");
  return Eigen::Map<const Matrix>(v.data(), m, n);
}

MatrixSubspace::MatrixSubspace(int n, int m) : n_(n), m_(m), stacked_(Matrix::Zero(static_cast<Eigen::Index>(m) * n, 0)) {
  require(n >= 1 && m >= 1, "subspace dimensions must be positive");
}

MatrixSubspace MatrixSubspace::from_orthonormal(int n, int m, Matrix stacked) {
  MatrixSubspace V(n, m);
  require(stacked.rows() == static_cast<Eigen::Index>(m) * n, "stacked basis has wrong row count");
  V.stacked_ = std::move(stacked);
  return V;
}

std::vector<Matrix> MatrixSubspace::basis() const {
  std::vector<Matrix> out;
  for (int i = 0; i < dim(); ++i) out.push_back(basis_element(i));
  return out;
}

Matrix MatrixSubspace::complement() const { return orthogonal_complement(stacked_); }

Matrix MatrixSubspace::project(const Matrix& A) const {
  require(A.rows() == m_ && A.cols() == n_, "matrix shape does not match subspace");
  if (dim() == 0) return Matrix::Zero(m_, n_);
  const Vector a = vec(A);
  return unvec(stacked_ * (stacked_.transpose() * a), m_, n_);
}

Matrix MatrixSubspace::combine(const Vector& c) const {
  require(c.size() == dim(), "coefficient vector length must equal dim V");
  return unvec(stacked_ * c, m_, n_);
}

Matrix orthonormalize(const Matrix& columns, double drop) {
  Matrix Q(columns.rows(), columns.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vector v = columns.col(j);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < kept; ++i) v -= Q.col(i).dot(v) * Q.col(i);
    const double residual = v.norm();
    if (residual < drop * original) continue;
    Q.col(kept++) = v / residual;
  }
  return Q.leftCols(kept);
}

MatrixSubspace make_subspace(int n, int m, const std::vector<Matrix>& generators, const Tolerances& tol) {
  require(n >= 1 && m >= 1, "subspace dimensions must be positive");
  Matrix cols(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Matrix& G = generators[i];
    require(G.rows() == m && G.cols() == n, "generator shape must be m x n");
    cols.col(static_cast<Eigen::Index>(i)) = vec(G);
  }
  return MatrixSubspace::from_orthonormal(n, m, orthonormalize(cols, tol.gs_drop));
}

double distance(const Matrix& A, const MatrixSubspace& V) { return (A - V.project(A)).norm(); }

namespace {

bool is_invertible(const Matrix& M, const Tolerances& tol) {
  if (M.rows() != M.cols()) return false;
  const Vector s = singular_values(M);
  return s.size() > 0 && s[s.size() - 1] > tol.rank_rel * std::max(1.0, s[0]);
}

}  // namespace

MatrixSubspace conjugate(const MatrixSubspace& V, const Matrix& P, const Matrix& Q, const Tolerances& tol) {
  require(P.rows() == V.m() && P.cols() == V.m(), "P must be m x m");
  require(Q.rows() == V.n() && Q.cols() == V.n(), "Q must be n x n");
  require(is_invertible(P, tol), "P is singular");
  require(is_invertible(Q, tol), "Q is singular");
  std::vector<Matrix> gens;
  for (int i = 0; i < V.dim(); ++i) gens.push_back(P * V.basis_element(i) * Q);
  return make_subspace(V.n(), V.m(), gens, tol);
}

Vector singular_values(const Matrix& A) {
  if (A.size() == 0) return Vector();
  return Eigen::BDCSVD<Matrix>(A).singularValues();
}

int numerical_rank(const Matrix& A, const Tolerances& tol) {
  const Vector s = singular_values(A);
  if (s.size() == 0) return 0;
  const double threshold = tol.rank_rel * std::max(1.0, s[0]);
  return static_cast<int>((s.array() > threshold).count());
}

Matrix nullspace(const Matrix& C, const Tolerances& tol) {
  const Eigen::Index cols = C.cols();
  if (C.rows() == 0 || cols == 0) return Matrix::Identity(cols, cols);
  Eigen::BDCSVD<Matrix> svd(C, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double threshold = tol.rank_rel * std::max(1.0, s.size() > 0 ? s[0] : 0.0);
  const auto rank = static_cast<Eigen::Index>((s.array() > threshold).count());
  return svd.matrixV().rightCols(cols - rank);
}

Vector least_squares(const Matrix& C, const Vector& b, const Tolerances& tol) {
  require(C.rows() == b.size(), "right-hand side length must match row count");
  if (C.size() == 0) return Vector::Zero(C.cols());
  Eigen::BDCSVD<Matrix> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double threshold = tol.rank_rel * std::max(1.0, s[0]);
  Vector coeffs = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i) coeffs[i] = s[i] > threshold ? coeffs[i] / s[i] : 0.0;
  return svd.matrixV() * coeffs;
}

Matrix orthogonal_complement(const Matrix& Q) {
  const Eigen::Index rows = Q.rows();
  if (Q.cols() == 0) return Matrix::Identity(rows, rows);
  Eigen::HouseholderQR<Matrix> qr(Q);
  const Matrix full = qr.householderQ() * Matrix::Identity(rows, rows);
  return full.rightCols(rows - Q.cols());
}

double max_principal_angle(const Matrix& Q1, const Matrix& Q2) {
  if (Q1.cols() != Q2.cols() || Q1.rows() != Q2.rows()) return std::numbers::pi / 2;
  if (Q1.cols() == 0) return 0.0;
  // sin of the largest angle is the spectral norm of the part of Q2
  // orthogonal to span(Q1); this stays accurate for tiny angles.
  const Matrix residual = Q2 - Q1 * (Q1.transpose() * Q2);
  const double s = singular_values(residual)[0];
  return std::asin(std::min(1.0, s));
}

bool same_subspace(const MatrixSubspace& a, const MatrixSubspace& b, const Tolerances& tol) {
  if (a.n() != b.n() || a.m() != b.m() || a.dim() != b.dim()) return false;
  return max_principal_angle(a.stacked(), b.stacked()) <= tol.subspace_angle;
}

}  // namespace rigid
