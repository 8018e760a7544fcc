#pragma once

// Prolongation chain M_0(V), M_1(V), ... of a matrix subspace V and the
// invariants alpha_k = dim M_k, alpha = sum alpha_k, delta = sup{k : M_k != 0}.

#include "rigid/config.hpp"
#include "rigid/matspace.hpp"
#include "rigid/symtensor.hpp"

#include <string>
#include <vector>

namespace rigid {

/// M_k(V) as an orthonormal basis in the flat coefficient space of
/// degree-k homogeneous maps.
struct HomSolutionSpace {
  int n = 0;
  int m = 0;
  int degree = 0;
  Matrix basis;  // hom_dim(n, m, degree) x dim

  int dim() const { return static_cast<int>(basis.cols()); }
  HomPoly element(int i) const { return HomPoly::from_flat(n, m, degree, basis.col(i)); }
  std::vector<HomPoly> elements() const;
};

struct DeltaStatus {
  enum class Kind { Finite, LowerBound, InfiniteCertified };

  Kind kind = Kind::LowerBound;
  /// d for Finite, k_max for LowerBound, unused (-1) for InfiniteCertified.
  int value = -1;

  static DeltaStatus finite(int d) { return {Kind::Finite, d}; }
  static DeltaStatus lower_bound(int k_max) { return {Kind::LowerBound, k_max}; }
  static DeltaStatus infinite() { return {Kind::InfiniteCertified, -1}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool operator==(const DeltaStatus&) const = default;
};

std::string to_string(DeltaStatus::Kind kind);

struct ChainReport {
  int n = 0;
  int m = 0;
  int dim_v = 0;
  std::vector<int> alpha;
  /// Exact when delta is finite, otherwise the sum computed so far.
  int alpha_total = 0;
  DeltaStatus delta;
  std::vector<HomSolutionSpace> spaces;

  bool alpha_total_exact() const { return delta.is_finite(); }
};

/// Constant maps R^n -> R^m, i.e. M_0(V) = R^m.
HomSolutionSpace constants_space(int n, int m);

/// M_k(V) from its definition: every slot matrix must lie in V.
HomSolutionSpace mk_direct(const MatrixSubspace& V, int k, const Tolerances& tol = {});

/// M_k(V) from M_{k-1}(V): all partial derivatives must lie in M_{k-1}.
/// From degree 0 this returns M_1 = V.
HomSolutionSpace mk_step(const MatrixSubspace& V, const HomSolutionSpace& prev, const Tolerances& tol = {});

/// Runs mk_step until the chain dies or k_max is reached. Never claims
/// delta = infinity on its own.
ChainReport chain(const MatrixSubspace& V, int k_max = kDefaultKMax, const Tolerances& tol = {});

/// Largest distance from V of any slot matrix of any basis element.
double max_slot_distance(const HomSolutionSpace& space, const MatrixSubspace& V);

}  // namespace rigid
