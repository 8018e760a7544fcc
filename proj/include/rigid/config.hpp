#pragma once

#include <cstdint>

namespace rigid {

/// Every numerical threshold used by the library lives here so that a
/// report can embed the exact values it was produced with.
struct Tolerances {
  /// Singular values below rank_rel * max(1, sigma_1) count as zero.
  double rank_rel = 1e-9;
  /// Gram-Schmidt drops a generator whose residual falls below this
  /// fraction of its original norm.
  double gs_drop = 1e-10;
  /// Max principal angle (radians) for two subspaces to count as equal.
  double subspace_angle = 1e-8;
  /// Distance to V below which a matrix counts as a member.
  double membership = 1e-8;
  /// Residual bound for every complex-pair certificate condition.
  double certificate = 1e-7;
  /// sigma_2 / sigma_1 bound that triggers rank-one extraction.
  double rank_one_ratio = 1e-7;
  /// Unit-norm check on a rank-one witness.
  double unit_norm = 1e-10;
  /// Central finite-difference step for gradient checks.
  double fd_step = 1e-5;
  /// Finite-difference step for defining-function Jacobians.
  double tangent_fd_step = 1e-6;
  /// |phi(x, A)| bound for A to lie on a constraint set.
  double constraint_residual = 1e-9;
};

struct SearchOptions {
  std::uint64_t seed = 0;
  int restarts = 64;
};

inline constexpr int kDefaultKMax = 8;
inline constexpr int kDefaultJetDegree = 6;

}  // namespace rigid
