#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigid/error.hpp"
#include "rigid/symtensor.hpp"
#include "support.hpp"

using namespace rigid;
using rigid::testing::fd_jacobian;
using rigid::testing::gaussian_vector;
using rigid::testing::random_hompoly;
using rigid::testing::random_polymap;

TEST_CASE("monomial_basis follows graded order") {
  CHECK(monomial_basis(2, 2) == std::vector<MultiIndex>{{2, 0}, {1, 1}, {0, 2}});
  CHECK(monomial_basis(3, 1) == std::vector<MultiIndex>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(monomial_basis(1, 4) == std::vector<MultiIndex>{{4}});
  CHECK(monomial_basis(4, 0) == std::vector<MultiIndex>{{0, 0, 0, 0}});
  CHECK_THROWS_AS(monomial_basis(0, 2), InvalidArgument);

  CHECK(MultiIndex{2, 0} < MultiIndex{1, 1});
  CHECK(MultiIndex{0, 2} < MultiIndex{3, 0});
}

TEST_CASE("monomial_rank inverts the enumeration") {
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= 6; ++k) {
      const auto basis = monomial_basis(n, k);
      REQUIRE(basis.size() == binomial(n + k - 1, k));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        CHECK(monomial_rank(basis[j]) == j);
        if (j > 0) CHECK(basis[j - 1] < basis[j]);
      }
    }
}

TEST_CASE("hom_dim") {
  CHECK(hom_dim(2, 2, 1) == 4);
  CHECK(hom_dim(3, 3, 2) == 18);
  CHECK(hom_dim(5, 7, 0) == 7);
}

TEST_CASE("derive") {
  HomPoly p(2, 2, 3);
  p.set_coeff(0, {2, 1}, 1.0);  // (x1^2 x2, 0)
  const HomPoly d = derive(p, 0);
  CHECK(d.degree() == 2);
  CHECK(d.coeff(0, {1, 1}) == 2.0);
  CHECK(d.coefficients().cwiseAbs().sum() == 2.0);

  HomPoly q(2, 1, 2);
  q.set_coeff(0, {2, 0}, 1.0);
  CHECK(derive(q, 1).is_zero());

  CHECK_THROWS_AS(derive(HomPoly(2, 1, 0), 0), InvalidArgument);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const HomPoly r = random_hompoly(rng, 3, 2, 4);
    CHECK((derive(derive(r, 0), 2).coefficients() - derive(derive(r, 2), 0).coefficients()).norm() == 0.0);
  }
}

TEST_CASE("contract") {
  HomPoly p(2, 1, 2);
  p.set_coeff(0, {2, 0}, 1.0);
  HomPoly c = contract(p, Vector::Unit(2, 0));
  CHECK(c.coeff(0, {1, 0}) == doctest::Approx(1.0));
  CHECK(c.coeff(0, {0, 1}) == 0.0);
  CHECK(contract(p, Vector::Zero(2)).is_zero());

  HomPoly xy(2, 1, 2);
  xy.set_coeff(0, {1, 1}, 1.0);
  c = contract(xy, Vector::Unit(2, 1));
  CHECK(c.coeff(0, {1, 0}) == doctest::Approx(0.5));
  CHECK(c.coeff(0, {0, 1}) == 0.0);

  CHECK_THROWS_AS(contract(HomPoly(2, 1, 0), Vector::Zero(2)), InvalidArgument);
  CHECK_THROWS_AS(contract(p, Vector::Zero(3)), InvalidArgument);
}

TEST_CASE("contraction properties on random polynomials") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 4;
    const int k = 1 + trial % 4;
    const HomPoly p = random_hompoly(rng, n, 2, k);
    const Vector x = gaussian_vector(rng, n), y = gaussian_vector(rng, n);

    for (int i = 0; i < n; ++i)
      CHECK((contract(p, Vector::Unit(n, i)).coefficients() - derive(p, i).coefficients() / k).norm() < 1e-12);

    const double a = 0.7, b = -1.3;
    const Matrix lhs = contract(p, a * x + b * y).coefficients();
    const Matrix rhs = a * contract(p, x).coefficients() + b * contract(p, y).coefficients();
    CHECK((lhs - rhs).norm() < 1e-11 * (1 + rhs.norm()));

    if (k >= 2) {
      const Matrix xy = contract(contract(p, x), y).coefficients();
      const Matrix yx = contract(contract(p, y), x).coefficients();
      CHECK((xy - yx).norm() < 1e-11 * (1 + xy.norm()));
    }
  }
}

TEST_CASE("slot_matrix") {
  HomPoly p(2, 2, 2);
  p.set_coeff(0, {1, 1}, 1.0);
  Matrix S = slot_matrix(p, {1, 0});
  Matrix expected(2, 2);
  expected << 0, 0.5, 0, 0;
  CHECK((S - expected).norm() < 1e-15);

  HomPoly sq(2, 1, 2);
  sq.set_coeff(0, {2, 0}, 1.0);
  S = slot_matrix(sq, {1, 0});
  CHECK(S(0, 0) == doctest::Approx(1.0));
  CHECK(S(0, 1) == 0.0);

  Matrix A(2, 3);
  A << 1, 2, 3, 4, 5, 6;
  HomPoly lin(3, 2, 1);
  for (int a = 0; a < 2; ++a)
    for (int j = 0; j < 3; ++j) lin.set_coeff(a, MultiIndex::unit(3, j), A(a, j));
  CHECK((slot_matrix(lin, MultiIndex::zero(3)) - A).norm() == 0.0);

  CHECK_THROWS_AS(slot_matrix(sq, {0, 0}), InvalidArgument);
}

TEST_CASE("slot_matrix agrees with iterated contraction") {
  // Filling slots one by one with unit vectors gives T(e_beta, .) directly.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const int k = 1 + trial % 4;
    const HomPoly p = random_hompoly(rng, n, 2, k);
    for (const auto& beta : monomial_basis(n, k - 1)) {
      HomPoly q = p;
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < beta[i]; ++e) q = contract(q, Vector::Unit(n, i));
      // q is now the linear map v -> T(e_beta, v).
      Matrix viaContract(2, n);
      for (int j = 0; j < n; ++j) viaContract.col(j) = q.evaluate(Vector::Unit(n, j));
      CHECK((viaContract - slot_matrix(p, beta)).norm() < 1e-12);
    }
  }
}

TEST_CASE("jacobian") {
  Matrix A(2, 3);
  A << 1, -2, 0.5, 3, 0, 1;
  HomPoly lin(3, 2, 1);
  for (int a = 0; a < 2; ++a)
    for (int j = 0; j < 3; ++j) lin.set_coeff(a, MultiIndex::unit(3, j), A(a, j));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) CHECK((jacobian(lin, gaussian_vector(rng, 3)) - A).norm() < 1e-15);

  HomPoly sq(1, 1, 2);
  sq.set_coeff(0, {2}, 1.0);
  Vector x(1);
  x << 3.0;
  CHECK(jacobian(PolyMap(sq), x)(0, 0) == doctest::Approx(6.0));
}

TEST_CASE("jacobian matches central differences on random cubics") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4, m = 1 + trial % 3;
    const PolyMap F = random_polymap(rng, n, m, 3);
    const Vector x = gaussian_vector(rng, n);
    const Matrix J = jacobian(F, x);
    const Matrix fd = fd_jacobian(F, x, 1e-5);
    CHECK((J - fd).norm() <= 1e-6 * std::max(1.0, J.norm()));
  }
}

TEST_CASE("jacobian of a homogeneous map is k times the slot evaluation") {
  std::mt19937_64 rng(99);
  for (int k = 1; k <= 4; ++k) {
    const HomPoly p = random_hompoly(rng, 3, 2, k);
    const Vector x = gaussian_vector(rng, 3);
    HomPoly q = p;
    for (int e = 0; e + 1 < k; ++e) q = contract(q, x);  // v -> T(x,...,x,v)
    Matrix slots(2, 3);
    for (int j = 0; j < 3; ++j) slots.col(j) = q.evaluate(Vector::Unit(3, j));
    CHECK((jacobian(p, x) - k * slots).norm() < 1e-11 * (1 + slots.norm()));
  }
}

TEST_CASE("derivative_operator matches derive") {
  std::mt19937_64 rng(17);
  const HomPoly p = random_hompoly(rng, 3, 2, 3);
  for (int i = 0; i < 3; ++i)
    CHECK((derivative_operator(3, 2, 3, i) * p.flat() - derive(p, i).flat()).norm() < 1e-13);
}
