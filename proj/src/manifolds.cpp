#include "rigid/manifolds.hpp"

#include "rigid/error.hpp"

#include <Eigen/QR>

#include <cmath>

namespace rigid {

namespace {

Matrix gaussian_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> N(0.0, 1.0);
  Matrix A(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) A(i, j) = N(rng);
  return A;
}

/// Haar-ish rotation: Q factor of a Gaussian matrix with det fixed to +1.
Matrix random_rotation(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, n, n));
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (R(i, i) < 0) Q.col(i) = -Q.col(i);
  if (Q.determinant() < 0) Q.col(0) = -Q.col(0);
  return Q;
}

// Gram-matrix families. Residual components: off-diagonal entries of A A^T
// (i < j) followed by diagonal entries.

Vector gram_residual(const Matrix& A, bool conformal) {
  const int n = static_cast<int>(A.rows());
  const Matrix G = A * A.transpose();
  const double scale = conformal ? A.squaredNorm() / n : 1.0;
  const int diagonals = conformal ? n - 1 : n;
  Vector r(n * (n - 1) / 2 + diagonals);
  Eigen::Index at = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r[at++] = G(i, j);
  for (int i = 0; i < diagonals; ++i) r[at++] = G(i, i) - scale;
  return r;
}

Matrix gram_jacobian(const Matrix& A, bool conformal) {
  const int n = static_cast<int>(A.rows());
  const int diagonals = conformal ? n - 1 : n;
  Matrix J = Matrix::Zero(n * (n - 1) / 2 + diagonals, n * n);
  // d G_ij / d A_kl = delta_ik A_jl + A_il delta_jk, column index k + n l.
  auto dG = [&](int i, int j, int k, int l) {
    return (i == k ? A(j, l) : 0.0) + (j == k ? A(i, l) : 0.0);
  };
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const Eigen::Index col = k + n * l;
      Eigen::Index row = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) J(row++, col) = dG(i, j, k, l);
      for (int i = 0; i < diagonals; ++i) {
        J(row++, col) = dG(i, i, k, l) - (conformal ? 2.0 * A(k, l) / n : 0.0);
      }
    }
  return J;
}

ConstraintFamily gram_family(const std::string& name, int n, bool conformal) {
  require(n >= 2, name + " family needs n >= 2");
  ConstraintFamily f;
  f.name = name;
  f.n = f.m = n;
  f.codim = n * (n + 1) / 2 - (conformal ? 1 : 0);
  f.phi = [conformal](const Vector&, const Matrix& A) { return gram_residual(A, conformal); };
  f.phi_jacobian = [conformal](const Vector&, const Matrix& A) { return gram_jacobian(A, conformal); };
  f.base_point = Matrix::Identity(n, n);
  if (conformal) {
    f.sampler = [n](std::mt19937_64& rng) {
      std::normal_distribution<double> N(0.0, 0.5);
      return Matrix(std::exp(N(rng)) * random_rotation(rng, n));
    };
    f.guard = [](const Matrix& A) { return A.determinant() > 0.0; };
  } else {
    f.sampler = [n](std::mt19937_64& rng) { return random_rotation(rng, n); };
  }
  return f;
}

Matrix quaternion_right(double a, double b, double c, double d) {
  Matrix R(4, 4);
  R << a, -b, -c, -d,
       b,  a,  d, -c,
       c, -d,  a,  b,
       d,  c, -b,  a;
  return R;
}

}  // namespace

ConstraintFamily linear_family(const std::string& name, const MatrixSubspace& V) {
  ConstraintFamily f;
  f.name = name;
  f.n = V.n();
  f.m = V.m();
  const Matrix perp = V.complement();
  f.codim = static_cast<int>(perp.cols());
  f.phi = [perp](const Vector&, const Matrix& A) -> Vector { return perp.transpose() * vec(A); };
  f.phi_jacobian = [perp](const Vector&, const Matrix&) -> Matrix { return perp.transpose(); };
  f.sampler = [V](std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    Vector c(V.dim());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = N(rng);
    return V.combine(c);
  };
  f.base_point = V.dim() > 0 ? V.basis_element(0) : Matrix::Zero(V.m(), V.n());
  return f;
}

std::vector<std::string> builtin_family_names() { return {"conformal", "isometry", "quaternion", "holomorphic"}; }

ConstraintFamily builtin_family(const std::string& name, int n) {
  if (name == "conformal") return gram_family(name, n, true);
  if (name == "isometry") return gram_family(name, n, false);
  if (name == "quaternion") {
    require(n == 4, "quaternion family requires n = 4");
    return linear_family(name, make_subspace(4, 4, {quaternion_right(1, 0, 0, 0), quaternion_right(0, 1, 0, 0),
                                                    quaternion_right(0, 0, 1, 0), quaternion_right(0, 0, 0, 1)}));
  }
  if (name == "holomorphic") {
    require(n == 2, "holomorphic family requires n = 2");
    ConstraintFamily f = linear_family(name, complex_plane(2, 2));
    f.base_point = Matrix::Identity(2, 2);
    return f;
  }
  throw InvalidArgument("unknown constraint family '" + name + "'");
}

double constraint_residual(const ConstraintFamily& family, const Matrix& A, const Vector& x) {
  require(A.rows() == family.m && A.cols() == family.n, "point has wrong shape for the family");
  if (family.guard && !family.guard(A)) throw InvalidArgument("point rejected by the " + family.name + " family guard");
  return family.phi(x, A).norm();
}

MatrixSubspace tangent_space(const ConstraintFamily& family, const Matrix& A, const Vector& x_in,
                             const Tolerances& tol) {
  const Vector x = x_in.size() == 0 ? Vector::Zero(family.n) : x_in;
  require(x.size() == family.n, "base point has wrong dimension");
  const double r = constraint_residual(family, A, x);
  require(r <= tol.constraint_residual,
          "point is off the constraint set (|phi| = " + std::to_string(r) + ")");

  Matrix J;
  if (family.phi_jacobian) {
    J = family.phi_jacobian(x, A);
  } else {
    const Eigen::Index cols = A.size();
    const Vector r0 = family.phi(x, A);
    J.resize(r0.size(), cols);
    const double h = tol.tangent_fd_step;
    for (Eigen::Index c = 0; c < cols; ++c) {
      Matrix Ap = A, Am = A;
      Ap.data()[c] += h;
      Am.data()[c] -= h;
      J.col(c) = (family.phi(x, Ap) - family.phi(x, Am)) / (2 * h);
    }
  }
  if (J.rows() == 0) return MatrixSubspace::from_orthonormal(family.n, family.m, Matrix::Identity(A.size(), A.size()));
  const int rank = numerical_rank(J, tol);
  if (rank != family.codim)
    throw InvalidArgument("degenerate point: defining-function Jacobian has rank " + std::to_string(rank) +
                          ", expected " + std::to_string(family.codim));
  return MatrixSubspace::from_orthonormal(family.n, family.m, nullspace(J, tol));
}

ManifoldReport sample_analysis(const ConstraintFamily& family, int sample_count, int k_max,
                               const SearchOptions& search, const Tolerances& tol) {
  require(sample_count >= 2, "sample_analysis needs at least 2 samples");
  require(static_cast<bool>(family.sampler), "family has no sampler");
  ManifoldReport report;
  report.family = family.name;
  report.n = family.n;
  report.m = family.m;
  std::mt19937_64 rng(search.seed);
  for (int s = 0; s < sample_count; ++s) {
    SampleResult result;
    result.point = family.sampler(rng);
    const MatrixSubspace V = tangent_space(family, result.point, Vector(), tol);
    result.tangent_dim = V.dim();
    const Classification c = classify_delta(V, k_max, search, tol, {.guard = false});
    result.alpha = c.chain.alpha;
    result.alpha_total = c.chain.alpha_total;
    result.delta = c.delta;
    result.certified_by = c.certified_by;
    report.samples.push_back(std::move(result));
  }
  report.constant = true;
  bool all_finite = true;
  for (const auto& s : report.samples) {
    report.constant = report.constant && s.alpha == report.samples.front().alpha;
    all_finite = all_finite && s.delta.is_finite();
  }
  report.hypothesis_holds = report.constant && all_finite;
  if (report.hypothesis_holds) report.k = report.samples.front().alpha_total;
  return report;
}

AugmentedSubspace AugmentedSubspace::make(int n, int m, const std::vector<std::pair<Matrix, Vector>>& generators,
                                          const Tolerances& tol) {
  require(n >= 1 && m >= 1, "augmented subspace dimensions must be positive");
  const Eigen::Index rows = static_cast<Eigen::Index>(m) * n + m;
  Matrix cols(rows, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& [L, y] = generators[i];
    require(L.rows() == m && L.cols() == n, "matrix part must be m x n");
    require(y.size() == m, "vector part must have length m");
    cols.col(static_cast<Eigen::Index>(i)) << vec(L), y;
  }
  AugmentedSubspace out;
  out.n_ = n;
  out.m_ = m;
  out.basis_ = orthonormalize(cols, tol.gs_drop);
  return out;
}

AugmentedSubspace AugmentedSubspace::with_free_values(const MatrixSubspace& V) {
  AugmentedSubspace out;
  out.n_ = V.n();
  out.m_ = V.m();
  const Eigen::Index mn = V.stacked().rows();
  out.basis_ = Matrix::Zero(mn + V.m(), V.dim() + V.m());
  out.basis_.topLeftCorner(mn, V.dim()) = V.stacked();
  out.basis_.bottomRightCorner(V.m(), V.m()) = Matrix::Identity(V.m(), V.m());
  return out;
}

AugmentedSubspace AugmentedSubspace::full(int n, int m) {
  const Eigen::Index size = static_cast<Eigen::Index>(m) * n + m;
  AugmentedSubspace out;
  out.n_ = n;
  out.m_ = m;
  out.basis_ = Matrix::Identity(size, size);
  return out;
}

MatrixSubspace AugmentedSubspace::matrix_projection(const Tolerances& tol) const {
  const Eigen::Index mn = static_cast<Eigen::Index>(m_) * n_;
  return MatrixSubspace::from_orthonormal(n_, m_, orthonormalize(basis_.topRows(mn), tol.gs_drop));
}

JetSpaceReport augmented_jet_space(const AugmentedSubspace& V_aug, const Matrix& A, int degree,
                                   const Tolerances& tol) {
  const int n = V_aug.n(), m = V_aug.m();
  require(n >= 1 && m >= 1, "augmented subspace is empty-shaped");
  require(A.rows() == m && A.cols() == n, "A must be m x n");
  require(degree >= 1, "truncation degree must be at least 1");
  const Eigen::Index mn = static_cast<Eigen::Index>(m) * n;
  const Matrix perp = orthogonal_complement(V_aug.basis());

  // Unknowns: flat coefficients of u_2, ..., u_D.
  std::vector<Eigen::Index> offset(static_cast<std::size_t>(degree) + 2, 0);
  Eigen::Index unknowns = 0;
  for (int j = 2; j <= degree; ++j) {
    offset[static_cast<std::size_t>(j)] = unknowns;
    unknowns += static_cast<Eigen::Index>(hom_dim(n, m, j));
  }
  auto column = [&](int j, int a, const MultiIndex& beta) {
    return offset[static_cast<std::size_t>(j)] + a + m * static_cast<Eigen::Index>(monomial_rank(beta));
  };

  // One block of perp.cols() rows per Taylor coefficient xi^gamma, |gamma| = d < D.
  std::vector<Matrix> blocks;
  std::vector<Vector> rhs;
  for (int d = 0; d < degree; ++d) {
    for (const auto& gamma : monomial_basis(n, d)) {
      Matrix raw = Matrix::Zero(mn + m, unknowns);
      Vector known = Vector::Zero(mn + m);
      // Derivative part: coefficient of xi^gamma in d_j u_{d+1, a}.
      for (int j = 0; j < n; ++j) {
        const MultiIndex beta = gamma.plus_unit(j);
        const double factor = gamma[j] + 1;
        for (int a = 0; a < m; ++a) {
          if (d + 1 == 1) known[a + m * j] += factor * A(a, j);
          else raw(a + m * j, column(d + 1, a, beta)) += factor;
        }
      }
      // Value part: coefficient of xi^gamma in u_{d, a}.
      for (int a = 0; a < m; ++a) {
        if (d == 1) {
          int i = 0;
          while (gamma[i] == 0) ++i;
          known[mn + a] += A(a, i);
        } else if (d >= 2) {
          raw(mn + a, column(d, a, gamma)) += 1.0;
        }
      }
      blocks.push_back(perp.transpose() * raw);
      rhs.push_back(-(perp.transpose() * known));
    }
  }

  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix M(rows, unknowns);
  Vector b(rows);
  rows = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    M.middleRows(rows, blocks[i].rows()) = blocks[i];
    b.segment(rows, blocks[i].rows()) = rhs[i];
    rows += blocks[i].rows();
  }

  JetSpaceReport report;
  report.degree = degree;
  Vector z = Vector::Zero(unknowns);
  if (unknowns > 0 && rows > 0) z = least_squares(M, b, tol);
  report.residual = rows > 0 ? (M * z - b).norm() : 0.0;
  report.consistent = report.residual <= tol.membership * std::max(1.0, b.norm());
  if (!report.consistent) return report;

  const Matrix N = nullspace(M, tol);
  report.dimension = static_cast<int>(N.cols());

  auto to_polymap = [&](const Vector& coeffs, bool with_linear) {
    PolyMap u(n, m, degree);
    if (with_linear)
      for (int a = 0; a < m; ++a)
        for (int j = 0; j < n; ++j) u.component_mut(1).set_coeff(a, MultiIndex::unit(n, j), A(a, j));
    for (int j = 2; j <= degree; ++j)
      u.component_mut(j) = HomPoly::from_flat(n, m, j, coeffs.segment(offset[static_cast<std::size_t>(j)],
                                                                      static_cast<Eigen::Index>(hom_dim(n, m, j))));
    return u;
  };
  report.particular = to_polymap(z, true);
  for (Eigen::Index c = 0; c < N.cols(); ++c) report.basis.push_back(to_polymap(N.col(c), false));
  return report;
}

}  // namespace rigid
