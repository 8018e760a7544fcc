#include "rigid/polyspace.hpp"

#include "rigid/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rigid {

PolyBasis solution_basis(const MatrixSubspace& V, const ChainReport& report) {
  require(report.delta.is_finite(), "solution_basis needs a terminated chain");
  require(report.n == V.n() && report.m == V.m(), "chain report does not belong to V");
  PolyBasis out{V.n(), V.m(), {}, {}};
  for (const auto& space : report.spaces)
    for (const auto& p : space.elements()) {
      out.elements.emplace_back(p);
      out.degrees.push_back(space.degree);
    }
  return out;
}

namespace {

Vector linear_part(const PolyMap& F) {
  if (F.max_degree() < 1) return Vector::Zero(static_cast<Eigen::Index>(hom_dim(F.n(), F.m(), 1)));
  return F.component(1).flat();
}

}  // namespace

PolyBasis reduced_basis(const PolyBasis& basis, const Tolerances& tol) {
  PolyBasis out{basis.n, basis.m, {}, {}};
  const bool graded = std::none_of(basis.degrees.begin(), basis.degrees.end(), [](int d) { return d < 0; }) &&
                      basis.degrees.size() == basis.elements.size();
  if (graded) {
    for (int i = 0; i < basis.size(); ++i) {
      if (basis.degrees[static_cast<std::size_t>(i)] == 1) continue;
      out.elements.push_back(basis.elements[static_cast<std::size_t>(i)]);
      out.degrees.push_back(basis.degrees[static_cast<std::size_t>(i)]);
    }
    return out;
  }

  if (basis.size() == 0) return out;
  Matrix L(static_cast<Eigen::Index>(hom_dim(basis.n, basis.m, 1)), basis.size());
  for (int j = 0; j < basis.size(); ++j) L.col(j) = linear_part(basis.elements[static_cast<std::size_t>(j)]);
  const Matrix Z = nullspace(L, tol);
  int max_degree = 0;
  for (const auto& e : basis.elements) max_degree = std::max(max_degree, e.max_degree());
  for (Eigen::Index c = 0; c < Z.cols(); ++c) {
    PolyMap F(basis.n, basis.m, max_degree);
    for (int j = 0; j < basis.size(); ++j) {
      const PolyMap& e = basis.elements[static_cast<std::size_t>(j)];
      for (int d = 0; d <= e.max_degree(); ++d) F.component_mut(d) += Z(j, c) * e.component(d);
    }
    // The linear part is zero up to rounding; store it as exactly zero.
    if (F.max_degree() >= 1) F.component_mut(1).coefficients().setZero();
    out.elements.push_back(std::move(F));
    out.degrees.push_back(-1);
  }
  return out;
}

VerificationReport verify_membership(const PolyMap& F, const MatrixSubspace& V, int samples, double radius,
                                     double tol, std::uint64_t seed) {
  require(tol > 0.0, "tolerance must be positive");
  require(samples >= 0, "sample count must be non-negative");
  require(radius > 0.0, "radius must be positive");
  require(F.n() == V.n() && F.m() == V.m(), "map and subspace dimensions differ");
  VerificationReport report{0.0, samples, radius, tol, false};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n = F.n();
  for (int s = 0; s < samples; ++s) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = N(rng);
    const double norm = x.norm();
    const double r = radius * std::pow(U(rng), 1.0 / n);
    if (norm > 0.0) x *= r / norm;
    report.max_residual = std::max(report.max_residual, distance(jacobian(F, x), V));
  }
  report.pass = report.max_residual <= tol;
  return report;
}

}  // namespace rigid
