#pragma once

// Witnesses for the two ways a subspace V can have an infinite prolongation
// chain: a rank-one element psi (x) w, or a plane P W Q conjugate to
// span{I2, J2} padded with zeros. Searches are best effort; every witness
// they return has passed the matching verify_* check.

#include "rigid/config.hpp"
#include "rigid/matspace.hpp"
#include "rigid/prolong.hpp"

#include <optional>
#include <string>

namespace rigid {

struct RankOneWitness {
  Vector psi;  // covector on R^n, unit length
  Vector w;    // vector in R^m, unit length
  double residual = 0.0;

  Matrix matrix() const { return w * psi.transpose(); }
};

struct ComplexPairResiduals {
  double rank_a = 0.0;         // sigma_3 / sigma_1 of A
  double rank_b = 0.0;
  double column_gap = 0.0;     // sine of the largest principal angle
  double row_gap = 0.0;
  double complex_structure = 0.0;  // |K^2 + I|_F, K = B~ A~^-1
  double distance_a = 0.0;     // distance(A, V) / max(1, |A|_F)
  double distance_b = 0.0;
  double reconstruction = 0.0; // angle between span{A,B} and P W Q
};

struct ComplexPairWitness {
  Matrix A;
  Matrix B;
  Matrix P;
  Matrix Q;
  ComplexPairResiduals residuals;
};

/// Full outcome of checking a candidate pair; P and Q are filled in when
/// the certificate conditions hold.
struct ComplexPairCheck {
  bool certified = false;
  std::string failure;
  ComplexPairResiduals residuals;
  Matrix P;
  Matrix Q;
};

/// span{I2 padded, J2 padded} inside L(R^n, R^m).
MatrixSubspace complex_plane(int n, int m);

std::optional<RankOneWitness> find_rank_one(const MatrixSubspace& V, const SearchOptions& search = {},
                                            const Tolerances& tol = {});
bool verify_rank_one(const MatrixSubspace& V, const RankOneWitness& witness, const Tolerances& tol = {});

std::optional<ComplexPairWitness> find_complex_pair(const MatrixSubspace& V, const SearchOptions& search = {},
                                                    const Tolerances& tol = {});
ComplexPairCheck check_complex_pair(const MatrixSubspace& V, const Matrix& A, const Matrix& B,
                                    const Tolerances& tol = {});
bool verify_complex_pair(const MatrixSubspace& V, const ComplexPairWitness& witness, const Tolerances& tol = {});

struct ClassifyOptions {
  /// Also run the detectors when the chain terminates, so that a certified
  /// witness next to a finite chain is caught as an inconsistency.
  bool guard = true;
};

struct Classification {
  DeltaStatus delta;
  ChainReport chain;
  bool rank_one_searched = false;
  bool complex_pair_searched = false;
  std::optional<RankOneWitness> rank_one;
  std::optional<ComplexPairWitness> complex_pair;
  /// "rank_one", "complex_pair" or empty.
  std::string certified_by;
};

/// Chain first, detectors second. Throws InconsistencyError when the chain
/// terminates but a witness certifies.
Classification classify_delta(const MatrixSubspace& V, int k_max = kDefaultKMax, const SearchOptions& search = {},
                              const Tolerances& tol = {}, const ClassifyOptions& options = {});

}  // namespace rigid
