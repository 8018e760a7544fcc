#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigid/error.hpp"
#include "rigid/matspace.hpp"
#include "support.hpp"

#include <cmath>

using namespace rigid;
using namespace rigid::testing;

TEST_CASE("make_subspace") {
  CHECK(make_subspace(2, 2, {Matrix::Identity(2, 2), 2 * Matrix::Identity(2, 2)}).dim() == 1);
  CHECK(skew_space(3).dim() == 3);
  CHECK(make_subspace(3, 2, {}).dim() == 0);
  CHECK_THROWS_AS(make_subspace(2, 2, {Matrix::Identity(3, 3)}), InvalidArgument);

  const MatrixSubspace V = conformal_space(4);
  CHECK(V.dim() == 7);
  const Matrix G = V.stacked().transpose() * V.stacked();
  CHECK((G - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("near-dependent generators are dropped") {
  const Matrix I = Matrix::Identity(2, 2);
  Matrix tiny = Matrix::Zero(2, 2);
  tiny(0, 1) = 1e-12;
  CHECK(make_subspace(2, 2, {I, I + tiny}).dim() == 1);
  tiny(0, 1) = 1e-6;
  CHECK(make_subspace(2, 2, {I, I + tiny}).dim() == 2);
}

TEST_CASE("distance") {
  const MatrixSubspace V = conformal_space(3);
  CHECK(distance(V.basis_element(2) * 3.0 - V.basis_element(0), V) <= 1e-12);

  const MatrixSubspace J = make_subspace(2, 2, {J2()});
  CHECK(distance(Matrix::Identity(2, 2), J) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(distance(Matrix::Identity(2, 2), w_space(2, 2)) <= 1e-15);
}

TEST_CASE("distance properties") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4, m = 1 + (trial / 4) % 3;
    const MatrixSubspace V = random_subspace(rng, n, m, trial % (n * m + 1));
    const Matrix A = gaussian(rng, m, n);
    const double d = distance(A, V);
    CHECK(std::abs(d * d + V.project(A).squaredNorm() - A.squaredNorm()) <= 1e-10 * (1 + A.squaredNorm()));
    CHECK(distance(-2.5 * A, V) == doctest::Approx(2.5 * d).epsilon(1e-12));
  }
}

TEST_CASE("conjugate") {
  std::mt19937_64 rng(8);
  const MatrixSubspace V = random_subspace(rng, 3, 2, 3);
  CHECK(same_subspace(conjugate(V, Matrix::Identity(2, 2), Matrix::Identity(3, 3)), V));

  const MatrixSubspace W = w_space(3, 3);
  const Matrix P = well_conditioned(rng, 3, 5.0), Q = well_conditioned(rng, 3, 5.0);
  const MatrixSubspace PWQ = conjugate(W, P, Q);
  CHECK(PWQ.dim() == 2);
  CHECK(same_subspace(conjugate(PWQ, P.inverse(), Q.inverse()), W));

  const Vector psi = gaussian_vector(rng, 3), w = gaussian_vector(rng, 2);
  const MatrixSubspace line = make_subspace(3, 2, {w * psi.transpose()});
  const MatrixSubspace moved = conjugate(line, well_conditioned(rng, 2, 3.0), well_conditioned(rng, 3, 3.0));
  CHECK(numerical_rank(moved.basis_element(0)) == 1);

  Matrix singular = Matrix::Identity(3, 3);
  singular(2, 2) = 0.0;
  CHECK_THROWS_AS(conjugate(W, singular, Q), InvalidArgument);
  CHECK_THROWS_AS(conjugate(W, P, Matrix::Identity(2, 2)), InvalidArgument);
}

TEST_CASE("subspace equality is an equivalence on a small corpus") {
  std::mt19937_64 rng(12);
  std::vector<MatrixSubspace> corpus;
  for (int i = 0; i < 4; ++i) {
    const MatrixSubspace V = random_subspace(rng, 3, 3, 2 + i % 2);
    corpus.push_back(V);
    // Same span, different basis.
    const Matrix mix = well_conditioned(rng, V.dim(), 4.0);
    std::vector<Matrix> gens;
    for (int j = 0; j < V.dim(); ++j) gens.push_back(V.combine(mix.col(j)));
    corpus.push_back(make_subspace(3, 3, gens));
  }
  for (const auto& a : corpus) {
    CHECK(same_subspace(a, a));
    for (const auto& b : corpus) {
      CHECK(same_subspace(a, b) == same_subspace(b, a));
      for (const auto& c : corpus)
        if (same_subspace(a, b) && same_subspace(b, c)) CHECK(same_subspace(a, c));
    }
  }
  CHECK(same_subspace(corpus[0], corpus[1]));
  CHECK_FALSE(same_subspace(corpus[0], corpus[2]));
}

TEST_CASE("nullspace and rank") {
  Matrix C(2, 3);
  C << 1, 0, 0, 0, 1, 0;
  const Matrix N = nullspace(C);
  REQUIRE(N.cols() == 1);
  CHECK(std::abs(std::abs(N(2, 0)) - 1.0) < 1e-15);
  CHECK(numerical_rank(C) == 2);
  CHECK(nullspace(Matrix(0, 4)).cols() == 4);

  Matrix near = Matrix::Identity(3, 3);
  near(2, 2) = 1e-12;
  CHECK(numerical_rank(near) == 2);
}

TEST_CASE("principal angle is accurate for tiny rotations") {
  Matrix a = Matrix::Zero(3, 1), b = Matrix::Zero(3, 1);
  a(0, 0) = 1.0;
  const double theta = 1e-9;
  b(0, 0) = std::cos(theta);
  b(1, 0) = std::sin(theta);
  CHECK(max_principal_angle(a, b) == doctest::Approx(theta).epsilon(1e-6));
}
