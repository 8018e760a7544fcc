#pragma once

// Homogeneous vector-valued polynomials as the coordinate form of symmetric
// tensors. A degree-k map p : R^n -> R^m corresponds to the symmetric
// k-tensor T with p(x) = T(x, ..., x).

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rigid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Exponent tuple of a monomial x^beta in n variables.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)); }
  static MultiIndex unit(int n, int i);

  int size() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exponents_; }

  MultiIndex plus_unit(int i) const;
  MultiIndex minus_unit(int i) const;
  /// beta! = prod_i beta_i!
  double factorial() const;

  bool operator==(const MultiIndex& other) const { return exponents_ == other.exponents_; }
  /// Graded order: by degree, then lexicographically larger exponents first.
  std::strong_ordering operator<=>(const MultiIndex& other) const;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

std::size_t binomial(int n, int k);

/// All degree-k multi-indices in n variables, in canonical order.
std::vector<MultiIndex> monomial_basis(int n, int k);

/// Position of beta inside monomial_basis(beta.size(), beta.degree()).
std::size_t monomial_rank(const MultiIndex& beta);

/// Number of monomials of degree k in n variables.
std::size_t monomial_count(int n, int k);

/// Dimension m * C(n+k-1, k) of Sym^k(R^n; R^m).
std::size_t hom_dim(int n, int m, int k);

/// Homogeneous polynomial map of degree k, stored as an m x C(n+k-1,k)
/// coefficient matrix whose columns follow monomial_basis(n, k).
class HomPoly {
 public:
  HomPoly() = default;
  HomPoly(int n, int m, int k);

  /// Builds from a flat coefficient vector (column-major vec of the
  /// coefficient matrix, length hom_dim(n, m, k)).
  static HomPoly from_flat(int n, int m, int k, const Vector& flat);

  int n() const { return n_; }
  int m() const { return m_; }
  int degree() const { return k_; }

  const Matrix& coefficients() const { return coeffs_; }
  Matrix& coefficients() { return coeffs_; }
  Vector flat() const;

  double coeff(int output, const MultiIndex& beta) const;
  void set_coeff(int output, const MultiIndex& beta, double value);
  void add_coeff(int output, const MultiIndex& beta, double value);

  Vector evaluate(const Vector& x) const;
  bool is_zero() const { return coeffs_.isZero(0.0); }

  HomPoly& operator+=(const HomPoly& other);
  HomPoly& operator*=(double s);
  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator*(double s, HomPoly p) { return p *= s; }

 private:
  int n_ = 0;
  int m_ = 0;
  int k_ = 0;
  Matrix coeffs_;
};

/// Graded sum of homogeneous components of degrees 0..D.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(int n, int m, int max_degree);
  explicit PolyMap(const HomPoly& p);

  int n() const { return n_; }
  int m() const { return m_; }
  int max_degree() const { return static_cast<int>(components_.size()) - 1; }

  const HomPoly& component(int degree) const;
  /// Grows the graded sum as needed.
  HomPoly& component_mut(int degree);
  const std::vector<HomPoly>& components() const { return components_; }

  Vector evaluate(const Vector& x) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<HomPoly> components_;
};

/// Partial derivative with respect to coordinate i (0-based).
HomPoly derive(const HomPoly& p, int i);

/// Polynomial of the contraction Lambda_x T, i.e. (1/k) sum_i x_i d_i p.
HomPoly contract(const HomPoly& p, const Vector& x);

/// Matrix of v -> T(e_beta, v), with the k-1 leading slots filled
/// according to beta. Entry (a, j) = d^beta d_j p_a / k!.
Matrix slot_matrix(const HomPoly& p, const MultiIndex& beta);

/// Jacobian of a single homogeneous component at x.
Matrix jacobian(const HomPoly& p, const Vector& x);
Matrix jacobian(const PolyMap& F, const Vector& x);

// Coefficient-space forms of the maps above, acting on HomPoly::flat().

/// hom_dim(n,m,k-1) x hom_dim(n,m,k) matrix of p -> derive(p, i).
Matrix derivative_operator(int n, int m, int k, int i);

/// (m*n) x hom_dim(n,m,k) matrix of p -> vec(slot_matrix(p, beta)), where
/// vec is column-major.
Matrix slot_operator(int n, int m, int k, const MultiIndex& beta);

}  // namespace rigid
