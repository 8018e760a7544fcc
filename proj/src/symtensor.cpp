#include "rigid/symtensor.hpp"

#include "rigid/error.hpp"

#include <numeric>
#include <string>

namespace rigid {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) require(e >= 0, "multi-index exponents must be non-negative");
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::unit(int n, int i) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::plus_unit(int i) const {
  MultiIndex r = *this;
  ++r.exponents_.at(static_cast<std::size_t>(i));
  ++r.degree_;
  return r;
}

MultiIndex MultiIndex::minus_unit(int i) const {
  require(exponents_.at(static_cast<std::size_t>(i)) > 0, "exponent already zero");
  MultiIndex r = *this;
  --r.exponents_[static_cast<std::size_t>(i)];
  --r.degree_;
  return r;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exponents_)
    for (int j = 2; j <= e; ++j) f *= j;
  return f;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  // Within a degree the larger leading exponent comes first.
  return other.exponents_ <=> exponents_;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t monomial_count(int n, int k) {
  if (n <= 0 || k < 0) return 0;
  return binomial(n + k - 1, k);
}

std::size_t hom_dim(int n, int m, int k) {
  require(n >= 1 && m >= 1 && k >= 0, "hom_dim needs n >= 1, m >= 1, k >= 0");
  return static_cast<std::size_t>(m) * monomial_count(n, k);
}

namespace {

void enumerate(int n, int k, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == n - 1) {
    prefix.push_back(k);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = k; e >= 0; --e) {
    prefix.push_back(e);
    enumerate(n, k - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> monomial_basis(int n, int k) {
  require(n >= 1, "monomial_basis needs n >= 1");
  require(k >= 0, "monomial_basis needs k >= 0");
  std::vector<MultiIndex> out;
  out.reserve(monomial_count(n, k));
  std::vector<int> prefix;
  enumerate(n, k, prefix, out);
  return out;
}

std::size_t monomial_rank(const MultiIndex& beta) {
  const int n = beta.size();
  int remaining = beta.degree();
  std::size_t rank = 0;
  for (int i = 0; i + 1 < n; ++i) {
    for (int e = beta[i] + 1; e <= remaining; ++e) rank += monomial_count(n - i - 1, remaining - e);
    remaining -= beta[i];
  }
  return rank;
}

HomPoly::HomPoly(int n, int m, int k) : n_(n), m_(m), k_(k) {
  require(n >= 1 && m >= 1 && k >= 0, "HomPoly needs n >= 1, m >= 1, k >= 0");
  coeffs_ = Matrix::Zero(m, static_cast<Eigen::Index>(monomial_count(n, k)));
}

HomPoly HomPoly::from_flat(int n, int m, int k, const Vector& flat) {
  HomPoly p(n, m, k);
  require(flat.size() == static_cast<Eigen::Index>(hom_dim(n, m, k)), "flat coefficient length mismatch");
  p.coeffs_ = Eigen::Map<const Matrix>(flat.data(), m, p.coeffs_.cols());
  return p;
}

Vector HomPoly::flat() const { return Eigen::Map<const Vector>(coeffs_.data(), coeffs_.size()); }

double HomPoly::coeff(int output, const MultiIndex& beta) const {
  require(beta.size() == n_ && beta.degree() == k_, "multi-index does not match polynomial");
  return coeffs_(output, static_cast<Eigen::Index>(monomial_rank(beta)));
}

void HomPoly::set_coeff(int output, const MultiIndex& beta, double value) {
  require(beta.size() == n_ && beta.degree() == k_, "multi-index does not match polynomial");
  require(output >= 0 && output < m_, "output index out of range");
  coeffs_(output, static_cast<Eigen::Index>(monomial_rank(beta))) = value;
}

void HomPoly::add_coeff(int output, const MultiIndex& beta, double value) {
  set_coeff(output, beta, coeff(output, beta) + value);
}

Vector HomPoly::evaluate(const Vector& x) const {
  require(x.size() == n_, "point has wrong dimension");
  const auto basis = monomial_basis(n_, k_);
  Vector mono(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    double v = 1.0;
    for (int i = 0; i < n_; ++i)
      for (int e = 0; e < basis[j][i]; ++e) v *= x[i];
    mono[static_cast<Eigen::Index>(j)] = v;
  }
  return coeffs_ * mono;
}

HomPoly& HomPoly::operator+=(const HomPoly& other) {
  require(n_ == other.n_ && m_ == other.m_ && k_ == other.k_, "adding polynomials of different shape");
  coeffs_ += other.coeffs_;
  return *this;
}

HomPoly& HomPoly::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

PolyMap::PolyMap(int n, int m, int max_degree) : n_(n), m_(m) {
  require(max_degree >= 0, "negative degree");
  for (int d = 0; d <= max_degree; ++d) components_.emplace_back(n, m, d);
}

PolyMap::PolyMap(const HomPoly& p) : PolyMap(p.n(), p.m(), p.degree()) {
  components_.back() = p;
}

const HomPoly& PolyMap::component(int degree) const {
  require(degree >= 0 && degree <= max_degree(), "no component of degree " + std::to_string(degree));
  return components_[static_cast<std::size_t>(degree)];
}

HomPoly& PolyMap::component_mut(int degree) {
  require(degree >= 0, "negative degree");
  while (max_degree() < degree) components_.emplace_back(n_, m_, max_degree() + 1);
  return components_[static_cast<std::size_t>(degree)];
}

Vector PolyMap::evaluate(const Vector& x) const {
  Vector y = Vector::Zero(m_);
  for (const auto& c : components_) y += c.evaluate(x);
  return y;
}

HomPoly derive(const HomPoly& p, int i) {
  require(p.degree() >= 1, "cannot differentiate a degree-0 polynomial");
  require(i >= 0 && i < p.n(), "coordinate index out of range");
  HomPoly d(p.n(), p.m(), p.degree() - 1);
  const auto basis = monomial_basis(p.n(), p.degree());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const MultiIndex& beta = basis[j];
    if (beta[i] == 0) continue;
    const auto target = static_cast<Eigen::Index>(monomial_rank(beta.minus_unit(i)));
    d.coefficients().col(target) += beta[i] * p.coefficients().col(static_cast<Eigen::Index>(j));
  }
  return d;
}

HomPoly contract(const HomPoly& p, const Vector& x) {
  require(p.degree() >= 1, "cannot contract a degree-0 polynomial");
  require(x.size() == p.n(), "contraction vector has wrong dimension");
  HomPoly r(p.n(), p.m(), p.degree() - 1);
  for (int i = 0; i < p.n(); ++i)
    if (x[i] != 0.0) r += x[i] * derive(p, i);
  return r *= 1.0 / p.degree();
}

Matrix slot_matrix(const HomPoly& p, const MultiIndex& beta) {
  require(p.degree() >= 1, "slot_matrix needs degree >= 1");
  require(beta.size() == p.n() && beta.degree() == p.degree() - 1, "slot multi-index must have degree k-1");
  const Vector v = slot_operator(p.n(), p.m(), p.degree(), beta) * p.flat();
  return Eigen::Map<const Matrix>(v.data(), p.m(), p.n());
}

Matrix jacobian(const HomPoly& p, const Vector& x) {
  require(x.size() == p.n(), "point has wrong dimension");
  Matrix J = Matrix::Zero(p.m(), p.n());
  if (p.degree() == 0) return J;
  for (int j = 0; j < p.n(); ++j) J.col(j) = derive(p, j).evaluate(x);
  return J;
}

Matrix jacobian(const PolyMap& F, const Vector& x) {
  Matrix J = Matrix::Zero(F.m(), F.n());
  for (const auto& c : F.components()) J += jacobian(c, x);
  return J;
}

Matrix derivative_operator(int n, int m, int k, int i) {
  require(k >= 1, "derivative_operator needs k >= 1");
  require(i >= 0 && i < n, "coordinate index out of range");
  Matrix D = Matrix::Zero(static_cast<Eigen::Index>(hom_dim(n, m, k - 1)),
                          static_cast<Eigen::Index>(hom_dim(n, m, k)));
  const auto basis = monomial_basis(n, k);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j][i] == 0) continue;
    const auto target = static_cast<Eigen::Index>(monomial_rank(basis[j].minus_unit(i)));
    for (int a = 0; a < m; ++a)
      D(a + m * target, a + m * static_cast<Eigen::Index>(j)) = basis[j][i];
  }
  return D;
}

Matrix slot_operator(int n, int m, int k, const MultiIndex& beta) {
  require(k >= 1, "slot_operator needs k >= 1");
  require(beta.size() == n && beta.degree() == k - 1, "slot multi-index must have degree k-1");
  Matrix S = Matrix::Zero(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(hom_dim(n, m, k)));
  double k_factorial = 1.0;
  for (int j = 2; j <= k; ++j) k_factorial *= j;
  for (int j = 0; j < n; ++j) {
    const MultiIndex gamma = beta.plus_unit(j);
    const auto col = static_cast<Eigen::Index>(monomial_rank(gamma));
    const double scale = gamma.factorial() / k_factorial;
    for (int a = 0; a < m; ++a) S(a + m * j, a + m * col) = scale;
  }
  return S;
}

}  // namespace rigid
