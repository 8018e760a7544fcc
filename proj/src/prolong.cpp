#include "rigid/prolong.hpp"

#include "rigid/error.hpp"

#include <algorithm>

namespace rigid {

std::vector<HomPoly> HomSolutionSpace::elements() const {
  std::vector<HomPoly> out;
  for (int i = 0; i < dim(); ++i) out.push_back(element(i));
  return out;
}

std::string to_string(DeltaStatus::Kind kind) {
  switch (kind) {
    case DeltaStatus::Kind::Finite: return "finite";
    case DeltaStatus::Kind::LowerBound: return "lower_bound";
    case DeltaStatus::Kind::InfiniteCertified: return "infinite_certified";
  }
  return "unknown";
}

HomSolutionSpace constants_space(int n, int m) {
  return {n, m, 0, Matrix::Identity(m, m)};
}

namespace {

HomSolutionSpace zero_space(int n, int m, int k) {
  return {n, m, k, Matrix::Zero(static_cast<Eigen::Index>(hom_dim(n, m, k)), 0)};
}

}  // namespace

HomSolutionSpace mk_direct(const MatrixSubspace& V, int k, const Tolerances& tol) {
  require(k >= 0, "degree must be non-negative");
  const int n = V.n();
  const int m = V.m();
  if (k == 0) return constants_space(n, m);

  const Matrix perp = V.complement();
  const auto slots = monomial_basis(n, k - 1);
  const auto cols = static_cast<Eigen::Index>(hom_dim(n, m, k));
  Matrix C(perp.cols() * static_cast<Eigen::Index>(slots.size()), cols);
  Eigen::Index row = 0;
  for (const auto& beta : slots) {
    C.middleRows(row, perp.cols()) = perp.transpose() * slot_operator(n, m, k, beta);
    row += perp.cols();
  }
  return {n, m, k, nullspace(C, tol)};
}

HomSolutionSpace mk_step(const MatrixSubspace& V, const HomSolutionSpace& prev, const Tolerances& tol) {
  require(prev.n == V.n() && prev.m == V.m(), "previous space does not match V");
  const int n = V.n();
  const int m = V.m();
  const int k = prev.degree + 1;
  require(prev.basis.rows() == static_cast<Eigen::Index>(hom_dim(n, m, prev.degree)),
          "previous space has wrong coefficient dimension");

  // Slot matrices of a linear map are its Jacobian, so M_1 is V verbatim.
  if (prev.degree == 0) return {n, m, 1, V.stacked()};
  if (prev.dim() == 0) return zero_space(n, m, k);

  const Matrix perp = orthogonal_complement(prev.basis);
  const auto cols = static_cast<Eigen::Index>(hom_dim(n, m, k));
  if (perp.cols() == 0) return {n, m, k, Matrix::Identity(cols, cols)};

  Matrix C(perp.cols() * n, cols);
  for (int i = 0; i < n; ++i)
    C.middleRows(perp.cols() * i, perp.cols()) = perp.transpose() * derivative_operator(n, m, k, i);
  return {n, m, k, nullspace(C, tol)};
}

ChainReport chain(const MatrixSubspace& V, int k_max, const Tolerances& tol) {
  require(k_max >= 1, "k_max must be at least 1");
  ChainReport report;
  report.n = V.n();
  report.m = V.m();
  report.dim_v = V.dim();
  report.spaces.push_back(constants_space(V.n(), V.m()));
  report.alpha.push_back(V.m());
  report.delta = DeltaStatus::lower_bound(k_max);
  for (int k = 1; k <= k_max; ++k) {
    report.spaces.push_back(mk_step(V, report.spaces.back(), tol));
    const int a = report.spaces.back().dim();
    report.alpha.push_back(a);
    if (a == 0) {
      report.delta = DeltaStatus::finite(k - 1);
      break;
    }
  }
  for (int a : report.alpha) report.alpha_total += a;
  return report;
}

double max_slot_distance(const HomSolutionSpace& space, const MatrixSubspace& V) {
  if (space.degree == 0) return 0.0;
  double worst = 0.0;
  const auto slots = monomial_basis(space.n, space.degree - 1);
  for (int i = 0; i < space.dim(); ++i) {
    const HomPoly p = space.element(i);
    for (const auto& beta : slots) worst = std::max(worst, distance(slot_matrix(p, beta), V));
  }
  return worst;
}

}  // namespace rigid
