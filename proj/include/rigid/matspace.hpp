#pragma once

// Subspaces of L(R^n, R^m) held as Frobenius-orthonormal matrix bases,
// plus the rank and nullspace primitives the rest of the library uses.

#include "rigid/config.hpp"
#include "rigid/symtensor.hpp"

#include <vector>

namespace rigid {

/// Column-major vec of an m x n matrix.
Vector vec(const Matrix& A);
Matrix unvec(const Vector& v, int m, int n);

class MatrixSubspace {
 public:
  MatrixSubspace() = default;
  /// The zero subspace of L(R^n, R^m).
  MatrixSubspace(int n, int m);

  /// Wraps a stack (m*n x dim) whose columns are already orthonormal.
  static MatrixSubspace from_orthonormal(int n, int m, Matrix stacked);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return static_cast<int>(stacked_.cols()); }

  std::vector<Matrix> basis() const;
  Matrix basis_element(int i) const { return unvec(stacked_.col(i), m_, n_); }
  /// Basis as columns of vec'd matrices.
  const Matrix& stacked() const { return stacked_; }
  /// Orthonormal basis of the Frobenius-orthogonal complement.
  Matrix complement() const;

  Matrix project(const Matrix& A) const;
  /// Linear combination sum_i c_i * basis_i.
  Matrix combine(const Vector& c) const;

 private:
  int n_ = 0;
  int m_ = 0;
  Matrix stacked_;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. A column is
/// dropped when its residual is below drop * (its original norm).
Matrix orthonormalize(const Matrix& columns, double drop);

MatrixSubspace make_subspace(int n, int m, const std::vector<Matrix>& generators, const Tolerances& tol = {});

/// Frobenius distance from A to V.
double distance(const Matrix& A, const MatrixSubspace& V);

/// span{P B Q : B in V}.
MatrixSubspace conjugate(const MatrixSubspace& V, const Matrix& P, const Matrix& Q, const Tolerances& tol = {});

Vector singular_values(const Matrix& A);
int numerical_rank(const Matrix& A, const Tolerances& tol = {});

/// Orthonormal basis (as columns) of the numerical nullspace of C.
Matrix nullspace(const Matrix& C, const Tolerances& tol = {});

/// Minimum-norm least-squares solution of C z = b, truncating singular
/// values with the same rule as numerical_rank.
Vector least_squares(const Matrix& C, const Vector& b, const Tolerances& tol = {});

/// Orthonormal completion of the orthonormal columns of Q to R^rows.
Matrix orthogonal_complement(const Matrix& Q);

/// Largest principal angle between the column spans of two orthonormal
/// stacks; pi/2 when the dimensions differ.
double max_principal_angle(const Matrix& Q1, const Matrix& Q2);

bool same_subspace(const MatrixSubspace& a, const MatrixSubspace& b, const Tolerances& tol = {});

}  // namespace rigid
