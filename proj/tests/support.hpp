#pragma once

// Test-side constructions. These build subspaces straight from their
// textbook descriptions and do not go through the library's family code.

#include "rigid/matspace.hpp"
#include "rigid/symtensor.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace rigid::testing {

inline Matrix elementary(int m, int n, int r, int c) {
  Matrix E = Matrix::Zero(m, n);
  E(r, c) = 1.0;
  return E;
}

inline std::vector<Matrix> skew_generators(int n) {
  std::vector<Matrix> g;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.push_back(elementary(n, n, i, j) - elementary(n, n, j, i));
  return g;
}

inline MatrixSubspace skew_space(int n) { return make_subspace(n, n, skew_generators(n)); }

/// {lambda I + A : A skew}
inline MatrixSubspace conformal_space(int n) {
  auto g = skew_generators(n);
  g.push_back(Matrix::Identity(n, n));
  return make_subspace(n, n, g);
}

inline Matrix J2() {
  Matrix J(2, 2);
  J << 0, -1, 1, 0;
  return J;
}

inline Matrix pad(const Matrix& block, int m, int n) {
  Matrix P = Matrix::Zero(m, n);
  P.topLeftCorner(block.rows(), block.cols()) = block;
  return P;
}

/// span{I2, J2} placed in the top-left corner of m x n matrices.
inline MatrixSubspace w_space(int m, int n) {
  return make_subspace(n, m, {pad(Matrix::Identity(2, 2), m, n), pad(J2(), m, n)});
}

/// Right multiplication x -> x * q on quaternions in the basis (1, i, j, k).
inline Matrix quaternion_right(double a, double b, double c, double d) {
  Matrix R(4, 4);
  R << a, -b, -c, -d,
       b,  a,  d, -c,
       c, -d,  a,  b,
       d,  c, -b,  a;
  return R;
}

inline MatrixSubspace quaternion_space() {
  return make_subspace(4, 4, {quaternion_right(1, 0, 0, 0), quaternion_right(0, 1, 0, 0),
                              quaternion_right(0, 0, 1, 0), quaternion_right(0, 0, 0, 1)});
}

inline Matrix gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> N(0.0, 1.0);
  Matrix A(rows, cols);
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) A(i, j) = N(rng);
  return A;
}

inline Vector gaussian_vector(std::mt19937_64& rng, int n) { return gaussian(rng, n, 1).col(0); }

inline MatrixSubspace random_subspace(std::mt19937_64& rng, int n, int m, int dim) {
  std::vector<Matrix> g;
  for (int i = 0; i < dim; ++i) g.push_back(gaussian(rng, m, n));
  return make_subspace(n, m, g);
}

/// Matrix with singular values spread over [1, cond], random orthogonal
/// factors.
inline Matrix well_conditioned(std::mt19937_64& rng, int n, double cond) {
  Eigen::HouseholderQR<Matrix> q1(gaussian(rng, n, n)), q2(gaussian(rng, n, n));
  Matrix U = q1.householderQ() * Matrix::Identity(n, n);
  Matrix V = q2.householderQ() * Matrix::Identity(n, n);
  Vector s(n);
  for (int i = 0; i < n; ++i) s[i] = n == 1 ? 1.0 : std::pow(cond, double(i) / (n - 1));
  return U * s.asDiagonal() * V.transpose();
}

inline HomPoly random_hompoly(std::mt19937_64& rng, int n, int m, int k) {
  return HomPoly::from_flat(n, m, k, gaussian_vector(rng, static_cast<int>(hom_dim(n, m, k))));
}

inline PolyMap random_polymap(std::mt19937_64& rng, int n, int m, int max_degree) {
  PolyMap F(n, m, max_degree);
  for (int d = 0; d <= max_degree; ++d) F.component_mut(d) = random_hompoly(rng, n, m, d);
  return F;
}

/// Central finite-difference Jacobian of F at x.
inline Matrix fd_jacobian(const PolyMap& F, const Vector& x, double h) {
  Matrix J(F.m(), F.n());
  for (int j = 0; j < F.n(); ++j) {
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (F.evaluate(xp) - F.evaluate(xm)) / (2 * h);
  }
  return J;
}

}  // namespace rigid::testing
