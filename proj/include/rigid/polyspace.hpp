#pragma once

// Polynomial solution spaces P(V) and P*(V), and sampled verification of
// the constraint DF(x) in V.

#include "rigid/config.hpp"
#include "rigid/matspace.hpp"
#include "rigid/prolong.hpp"
#include "rigid/symtensor.hpp"

#include <cstdint>
#include <vector>

namespace rigid {

struct PolyBasis {
  int n = 0;
  int m = 0;
  std::vector<PolyMap> elements;
  /// Degree of each element when it is homogeneous, -1 otherwise.
  std::vector<int> degrees;

  int size() const { return static_cast<int>(elements.size()); }
};

/// Concatenates the homogeneous bases of a terminated chain.
PolyBasis solution_basis(const MatrixSubspace& V, const ChainReport& report);

/// Subspace of span(basis) whose degree-1 component vanishes.
PolyBasis reduced_basis(const PolyBasis& basis, const Tolerances& tol = {});

struct VerificationReport {
  double max_residual = 0.0;
  int samples = 0;
  double radius = 1.0;
  double tol = 0.0;
  bool pass = false;
};

/// Samples points uniformly in the ball of the given radius and checks
/// distance(DF(x), V) <= tol at each.
VerificationReport verify_membership(const PolyMap& F, const MatrixSubspace& V, int samples, double radius,
                                     double tol, std::uint64_t seed);

}  // namespace rigid
