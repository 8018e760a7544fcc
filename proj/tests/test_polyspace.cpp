#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigid/error.hpp"
#include "rigid/polyspace.hpp"
#include "support.hpp"

using namespace rigid;
using namespace rigid::testing;

namespace {

int count_degree(const PolyBasis& b, int d) { return static_cast<int>(std::count(b.degrees.begin(), b.degrees.end(), d)); }

}  // namespace

TEST_CASE("solution_basis for the conformal space") {
  const MatrixSubspace V = conformal_space(3);
  const PolyBasis basis = solution_basis(V, chain(V));
  CHECK(basis.size() == 10);
  CHECK(count_degree(basis, 0) == 3);
  CHECK(count_degree(basis, 1) == 4);
  CHECK(count_degree(basis, 2) == 3);

  // Quadratic elements have the form <B(x,y),z> = a(x)<y,z> + a(y)<x,z> - a(z)<x,y>,
  // i.e. p(x) = 2 a(x) x - |x|^2 a. Build the three and compare spans.
  Matrix expected(static_cast<Eigen::Index>(hom_dim(3, 3, 2)), 3);
  for (int l = 0; l < 3; ++l) {
    HomPoly p(3, 3, 2);
    for (int out = 0; out < 3; ++out) {
      p.add_coeff(out, MultiIndex::unit(3, l).plus_unit(out), 2.0);
      for (int i = 0; i < 3; ++i)
        if (out == l) p.add_coeff(out, MultiIndex::zero(3).plus_unit(i).plus_unit(i), -1.0);
    }
    expected.col(l) = p.flat();
  }
  Matrix computed(expected.rows(), 3);
  int col = 0;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.degrees[i] == 2) computed.col(col++) = basis.elements[i].component(2).flat();
  CHECK(max_principal_angle(orthonormalize(expected, 1e-12), orthonormalize(computed, 1e-12)) < 1e-9);
}

TEST_CASE("solution_basis for quaternions and the zero space") {
  const MatrixSubspace Q = quaternion_space();
  const PolyBasis basis = solution_basis(Q, chain(Q));
  CHECK(basis.size() == 8);
  CHECK(count_degree(basis, 0) == 4);
  CHECK(count_degree(basis, 1) == 4);

  const MatrixSubspace zero(3, 2);
  const PolyBasis constants = solution_basis(zero, chain(zero));
  CHECK(constants.size() == 2);
  CHECK(count_degree(constants, 0) == 2);

  CHECK_THROWS_AS(solution_basis(w_space(2, 2), chain(w_space(2, 2), 3)), InvalidArgument);
}

TEST_CASE("reduced_basis") {
  const MatrixSubspace V = conformal_space(3);
  const PolyBasis basis = solution_basis(V, chain(V));
  const PolyBasis reduced = reduced_basis(basis);
  CHECK(reduced.size() == 6);
  for (const auto& e : reduced.elements)
    if (e.max_degree() >= 1) CHECK(e.component(1).coefficients().isZero(0.0));

  CHECK(reduced_basis(solution_basis(quaternion_space(), chain(quaternion_space()))).size() == 4);
  const MatrixSubspace zero(2, 2);
  CHECK(reduced_basis(solution_basis(zero, chain(zero))).size() == 2);
}

TEST_CASE("reduced_basis on a mixed-degree basis") {
  // Mix the graded conformal basis with a random invertible matrix so no
  // element is homogeneous; the reduced space must keep its dimension.
  const MatrixSubspace V = conformal_space(3);
  const PolyBasis graded = solution_basis(V, chain(V));
  std::mt19937_64 rng(5);
  const Matrix mix = well_conditioned(rng, graded.size(), 5.0);
  PolyBasis mixed{3, 3, {}, {}};
  for (int c = 0; c < graded.size(); ++c) {
    PolyMap F(3, 3, 2);
    for (int j = 0; j < graded.size(); ++j)
      for (int d = 0; d <= graded.elements[j].max_degree(); ++d)
        F.component_mut(d) += mix(j, c) * graded.elements[j].component(d);
    mixed.elements.push_back(F);
    mixed.degrees.push_back(-1);
  }
  const PolyBasis reduced = reduced_basis(mixed);
  CHECK(reduced.size() == 6);
  for (const auto& e : reduced.elements) {
    CHECK(e.component(1).coefficients().isZero(0.0));
    CHECK(verify_membership(e, V, 20, 1.0, 1e-9, 3).pass);
  }
}

TEST_CASE("verify_membership") {
  const MatrixSubspace V = conformal_space(3);
  const PolyBasis basis = solution_basis(V, chain(V));
  for (const auto& e : basis.elements) {
    const VerificationReport r = verify_membership(e, V, 100, 1.0, 1e-9, 7);
    CHECK(r.pass);
    CHECK(r.samples == 100);
  }

  HomPoly sq(3, 3, 2);
  sq.set_coeff(0, {2, 0, 0}, 1.0);
  CHECK_FALSE(verify_membership(PolyMap(sq), skew_space(3), 100, 1.0, 1e-9, 7).pass);

  HomPoly c(3, 3, 0);
  c.set_coeff(1, {0, 0, 0}, 4.0);
  CHECK(verify_membership(PolyMap(c), skew_space(3), 10, 1.0, 1e-12, 7).pass);

  CHECK_THROWS_AS(verify_membership(PolyMap(c), skew_space(3), 10, 1.0, 0.0, 7), InvalidArgument);
}

TEST_CASE("basis elements satisfy the Jacobian identity and grading closure") {
  const MatrixSubspace V = conformal_space(3);
  const ChainReport report = chain(V);
  const PolyBasis basis = solution_basis(V, report);
  std::mt19937_64 rng(9);
  for (int i = 0; i < basis.size(); ++i) {
    const int k = basis.degrees[i];
    if (k == 0) continue;
    const HomPoly& p = basis.elements[i].component(k);
    for (int s = 0; s < 100; ++s) {
      const Vector x = gaussian_vector(rng, 3);
      HomPoly q = p;
      for (int e = 0; e + 1 < k; ++e) q = contract(q, x);
      Matrix slots(3, 3);
      for (int j = 0; j < 3; ++j) slots.col(j) = q.evaluate(Vector::Unit(3, j));
      const Matrix J = jacobian(p, x);
      CHECK((J - k * slots).norm() < 1e-11 * (1 + J.norm()));
      CHECK(distance(J, V) < 1e-8 * (1 + x.squaredNorm()));
    }
  }

  // A random element of span(basis): each graded piece lies in M_k.
  PolyMap F(3, 3, 2);
  for (int i = 0; i < basis.size(); ++i) {
    const double c = gaussian_vector(rng, 1)[0];
    for (int d = 0; d <= basis.elements[i].max_degree(); ++d) F.component_mut(d) += c * basis.elements[i].component(d);
  }
  for (int k = 0; k <= 2; ++k) {
    const Matrix& M = report.spaces[k].basis;
    const Vector v = F.component(k).flat();
    CHECK((v - M * (M.transpose() * v)).norm() < 1e-10 * (1 + v.norm()));
  }
}
