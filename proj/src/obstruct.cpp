#include "rigid/obstruct.hpp"

#include "optimize.hpp"
#include "rigid/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace rigid {

namespace {

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

Vector random_direction(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> N(0.0, 1.0);
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = N(rng);
  return v;
}

Matrix combine_normalized(const MatrixSubspace& V, const Vector& c) {
  const double norm = c.norm();
  if (norm == 0.0) return Matrix::Zero(V.m(), V.n());
  return V.combine(c / norm);
}

constexpr int kNelderMeadBudgetPerDim = 150;
constexpr int kPolishIterations = 60;

// ---- rank one -------------------------------------------------------------

double squared_ratio(const Matrix& A) {
  const Vector s = singular_values(A);
  if (s.size() < 2) return 0.0;
  if (s[0] == 0.0) return 1.0;
  const double r = s[1] / s[0];
  return r * r;
}

/// A - (best rank-one approximation of A), for unit-norm A.
Vector rank_one_residual(const MatrixSubspace& V, const Vector& c) {
  const Matrix A = combine_normalized(V, c);
  if (std::min(A.rows(), A.cols()) < 2) return Vector::Zero(1);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix top = svd.singularValues()[0] * svd.matrixU().col(0) * svd.matrixV().col(0).transpose();
  return vec(A - top);
}

RankOneWitness extract_rank_one(const MatrixSubspace& V, const Vector& c) {
  const Matrix A = combine_normalized(V, c);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RankOneWitness w{svd.matrixV().col(0), svd.matrixU().col(0), 0.0};
  // Sign convention: largest-magnitude entry of psi is positive.
  Eigen::Index idx = 0;
  w.psi.cwiseAbs().maxCoeff(&idx);
  if (w.psi[idx] < 0) {
    w.psi = -w.psi;
    w.w = -w.w;
  }
  w.residual = distance(w.matrix(), V);
  return w;
}

// ---- complex pair ---------------------------------------------------------

struct TopTwo {
  Matrix U;  // m x 2
  Matrix V;  // n x 2
  Vector s;  // all singular values
};

TopTwo top_two(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU().leftCols(2), svd.matrixV().leftCols(2), svd.singularValues()};
}

struct PairPoint {
  Matrix A;
  Matrix B;
};

PairPoint split_pair(const MatrixSubspace& V, const Vector& x) {
  const Eigen::Index d = V.dim();
  return {combine_normalized(V, x.head(d)), V.combine(x.tail(d))};
}

/// Smooth residual vector vanishing exactly on certified pairs.
Vector complex_pair_residual(const MatrixSubspace& V, const Vector& x) {
  const PairPoint pt = split_pair(V, x);
  const int m = V.m(), n = V.n();
  const TopTwo a = top_two(pt.A);
  const TopTwo b = top_two(pt.B);
  const Matrix PA = a.U * a.U.transpose(), PB = b.U * b.U.transpose();
  const Matrix QA = a.V * a.V.transpose(), QB = b.V * b.V.transpose();
  const Matrix Im = Matrix::Identity(m, m), In = Matrix::Identity(n, n);

  Vector r(2 * m * n + m * m + n * n + m * m);
  Eigen::Index at = 0;
  auto append = [&](const Matrix& M) {
    r.segment(at, M.size()) = vec(M);
    at += M.size();
  };
  append((Im - PA) * pt.A);
  append((Im - PB) * pt.B);
  append((Im - PA) * PB);
  append((In - QA) * QB);

  if (a.s[1] <= 1e-6 * std::max(a.s[0], 1e-300)) {
    r.tail(m * m).setConstant(1e3);
    return r;
  }
  const Matrix pinv = a.V * a.s.head(2).cwiseInverse().asDiagonal() * a.U.transpose();
  const Matrix K = pt.B * pinv;
  append(K * K + PA);
  return r;
}

}  // namespace

MatrixSubspace complex_plane(int n, int m) {
  require(n >= 2 && m >= 2, "the complex plane needs n >= 2 and m >= 2");
  Matrix I = Matrix::Zero(m, n), J = Matrix::Zero(m, n);
  I(0, 0) = I(1, 1) = 1.0;
  J(0, 1) = -1.0;
  J(1, 0) = 1.0;
  return make_subspace(n, m, {I, J});
}

bool verify_rank_one(const MatrixSubspace& V, const RankOneWitness& witness, const Tolerances& tol) {
  if (witness.psi.size() != V.n() || witness.w.size() != V.m()) return false;
  const Matrix M = witness.matrix();
  if (std::abs(M.norm() - 1.0) > tol.unit_norm) return false;
  return distance(M, V) <= tol.membership;
}

std::optional<RankOneWitness> find_rank_one(const MatrixSubspace& V, const SearchOptions& search,
                                            const Tolerances& tol) {
  require(V.dim() >= 1, "rank-one search needs dim V >= 1");
  require(search.restarts >= 1, "restarts must be positive");
  const Eigen::Index d = V.dim();
  const double threshold = tol.rank_one_ratio * tol.rank_one_ratio;
  auto objective = [&](const Vector& c) { return squared_ratio(combine_normalized(V, c)); };
  auto residual = [&](const Vector& c) { return rank_one_residual(V, c); };

  for (int restart = 0; restart < search.restarts; ++restart) {
    auto rng = restart_rng(search.seed, restart);
    Vector c = random_direction(rng, d);
    c.normalize();
    auto coarse = detail::nelder_mead(objective, c, 0.25, kNelderMeadBudgetPerDim * static_cast<int>(d + 1), 1e-30);
    auto fine = detail::levenberg_marquardt(residual, coarse.x, kPolishIterations, 1e-32);
    const Vector& best = objective(fine.x) <= coarse.value ? fine.x : coarse.x;
    if (objective(best) > threshold) continue;
    RankOneWitness w = extract_rank_one(V, best);
    if (verify_rank_one(V, w, tol)) return w;
  }
  return std::nullopt;
}

ComplexPairCheck check_complex_pair(const MatrixSubspace& V, const Matrix& A, const Matrix& B,
                                    const Tolerances& tol) {
  ComplexPairCheck out;
  const int m = V.m(), n = V.n();
  if (A.rows() != m || A.cols() != n || B.rows() != m || B.cols() != n) {
    out.failure = "shape mismatch";
    return out;
  }
  if (m < 2 || n < 2) {
    out.failure = "needs m >= 2 and n >= 2";
    return out;
  }
  auto& res = out.residuals;
  const TopTwo a = top_two(A);
  const TopTwo b = top_two(B);
  auto third = [](const Vector& s) { return s.size() > 2 && s[0] > 0 ? s[2] / s[0] : 0.0; };
  res.rank_a = third(a.s);
  res.rank_b = third(b.s);
  res.column_gap = std::sin(max_principal_angle(a.U, b.U));
  res.row_gap = std::sin(max_principal_angle(a.V, b.V));
  res.distance_a = distance(A, V) / std::max(1.0, A.norm());
  res.distance_b = distance(B, V) / std::max(1.0, B.norm());

  const auto rank_floor = [&](const Vector& s) { return s[1] > tol.rank_rel * std::max(1.0, s[0]); };
  if (!rank_floor(a.s) || !rank_floor(b.s)) {
    res.complex_structure = std::numeric_limits<double>::infinity();
    out.failure = "rank below 2";
    return out;
  }
  const Matrix At = a.U.transpose() * A * a.V;
  const Matrix Bt = a.U.transpose() * B * a.V;
  const Matrix K = Bt * At.inverse();
  res.complex_structure = (K * K + Matrix::Identity(2, 2)).norm();

  if (res.rank_a > tol.certificate || res.rank_b > tol.certificate) out.failure = "rank above 2";
  else if (res.column_gap > tol.certificate) out.failure = "column spaces differ";
  else if (res.row_gap > tol.certificate) out.failure = "row spaces differ";
  else if (res.complex_structure > tol.certificate) out.failure = "no complex structure";
  else if (res.distance_a > tol.membership || res.distance_b > tol.membership) out.failure = "pair not in V";
  if (!out.failure.empty()) return out;

  // K = S J S^-1 with S = [e1, K e1]; then A = P I Q and B = P J Q.
  Matrix S(2, 2);
  S.col(0) = Vector::Unit(2, 0);
  S.col(1) = K.col(0);
  Eigen::JacobiSVD<Matrix> full_a(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix Ufull = full_a.matrixU(), Vfull = full_a.matrixV();
  out.P = Ufull;
  out.P.leftCols(2) = a.U * S;
  out.Q = Vfull.transpose();
  out.Q.topRows(2) = S.inverse() * At * a.V.transpose();

  const Vector sp = singular_values(out.P), sq = singular_values(out.Q);
  if (sp[sp.size() - 1] <= tol.rank_rel * sp[0] || sq[sq.size() - 1] <= tol.rank_rel * sq[0]) {
    out.failure = "reconstruction singular";
    return out;
  }
  const MatrixSubspace target = make_subspace(n, m, {A, B}, tol);
  const MatrixSubspace rebuilt = conjugate(complex_plane(n, m), out.P, out.Q, tol);
  res.reconstruction = target.dim() == 2 ? max_principal_angle(target.stacked(), rebuilt.stacked())
                                         : std::numeric_limits<double>::infinity();
  if (res.reconstruction > tol.certificate) {
    out.failure = "reconstruction mismatch";
    return out;
  }
  out.certified = true;
  return out;
}

bool verify_complex_pair(const MatrixSubspace& V, const ComplexPairWitness& witness, const Tolerances& tol) {
  return check_complex_pair(V, witness.A, witness.B, tol).certified;
}

std::optional<ComplexPairWitness> find_complex_pair(const MatrixSubspace& V, const SearchOptions& search,
                                                    const Tolerances& tol) {
  require(V.dim() >= 2, "complex-pair search needs dim V >= 2");
  require(V.n() >= 2 && V.m() >= 2, "complex-pair search needs n >= 2 and m >= 2");
  require(search.restarts >= 1, "restarts must be positive");
  const Eigen::Index d = V.dim();
  auto residual = [&](const Vector& x) { return complex_pair_residual(V, x); };
  auto objective = [&](const Vector& x) { return residual(x).squaredNorm(); };

  for (int restart = 0; restart < search.restarts; ++restart) {
    auto rng = restart_rng(search.seed, restart);
    Vector x = random_direction(rng, 2 * d);
    x.head(d).normalize();
    auto coarse = detail::nelder_mead(objective, x, 0.25, kNelderMeadBudgetPerDim * static_cast<int>(2 * d + 1), 1e-30);
    auto fine = detail::levenberg_marquardt(residual, coarse.x, kPolishIterations, 1e-32);
    const Vector& best = fine.value <= coarse.value ? fine.x : coarse.x;
    const PairPoint pt = split_pair(V, best);
    ComplexPairCheck check = check_complex_pair(V, pt.A, pt.B, tol);
    if (check.certified) return ComplexPairWitness{pt.A, pt.B, check.P, check.Q, check.residuals};
  }
  return std::nullopt;
}

Classification classify_delta(const MatrixSubspace& V, int k_max, const SearchOptions& search,
                              const Tolerances& tol, const ClassifyOptions& options) {
  Classification out;
  out.chain = chain(V, k_max, tol);
  const bool finite = out.chain.delta.is_finite();
  if (!finite || options.guard) {
    if (V.dim() >= 1) {
      out.rank_one_searched = true;
      out.rank_one = find_rank_one(V, search, tol);
    }
    if (V.dim() >= 2 && V.n() >= 2 && V.m() >= 2) {
      out.complex_pair_searched = true;
      out.complex_pair = find_complex_pair(V, search, tol);
    }
  }
  if (out.rank_one) out.certified_by = "rank_one";
  else if (out.complex_pair) out.certified_by = "complex_pair";

  if (finite) {
    if (!out.certified_by.empty())
      throw InconsistencyError("chain terminates at degree " + std::to_string(out.chain.delta.value) +
                               " but a " + out.certified_by + " witness certifies; tolerances are inconsistent");
    out.delta = out.chain.delta;
  } else {
    out.delta = out.certified_by.empty() ? DeltaStatus::lower_bound(k_max) : DeltaStatus::infinite();
  }
  return out;
}

}  // namespace rigid
