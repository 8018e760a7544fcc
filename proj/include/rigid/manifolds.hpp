#pragma once

// Nonlinear constraint sets given by defining functions: tangent spaces,
// constancy of the prolongation invariants across sampled points, and
// truncated jet spaces for constraints that also involve the map's value.

#include "rigid/config.hpp"
#include "rigid/matspace.hpp"
#include "rigid/obstruct.hpp"
#include "rigid/prolong.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace rigid {

/// A constraint set M_x = {A : phi(x, A) = 0} in L(R^n, R^m).
struct ConstraintFamily {
  using Residual = std::function<Vector(const Vector& x, const Matrix& A)>;
  /// Rows are residual components, columns follow vec(A).
  using ResidualJacobian = std::function<Matrix(const Vector& x, const Matrix& A)>;
  using Sampler = std::function<Matrix(std::mt19937_64& rng)>;
  using Guard = std::function<bool(const Matrix& A)>;

  std::string name;
  int n = 0;
  int m = 0;
  /// Codimension of M_x, i.e. the expected rank of the A-Jacobian of phi.
  int codim = 0;
  Residual phi;
  /// Optional; finite differences are used when empty.
  ResidualJacobian phi_jacobian;
  Sampler sampler;
  /// Extra admissibility condition on top of phi = 0 (may be empty).
  Guard guard;
  /// A distinguished point of the constraint set (identity for groups).
  Matrix base_point;
};

/// Names: conformal, isometry, quaternion, holomorphic. Linear families
/// built from an explicit subspace go through linear_family.
ConstraintFamily builtin_family(const std::string& name, int n);

/// The constraint set is V itself.
ConstraintFamily linear_family(const std::string& name, const MatrixSubspace& V);

std::vector<std::string> builtin_family_names();

/// |phi(x, A)|, throwing when the guard rejects A.
double constraint_residual(const ConstraintFamily& family, const Matrix& A, const Vector& x);

/// V_{x,A}: kernel of the A-Jacobian of phi.
MatrixSubspace tangent_space(const ConstraintFamily& family, const Matrix& A, const Vector& x = Vector(),
                             const Tolerances& tol = {});

struct SampleResult {
  Matrix point;
  int tangent_dim = 0;
  std::vector<int> alpha;
  int alpha_total = 0;
  DeltaStatus delta;
  std::string certified_by;
};

struct ManifoldReport {
  std::string family;
  int n = 0;
  int m = 0;
  std::vector<SampleResult> samples;
  /// All sampled alpha sequences identical.
  bool constant = false;
  /// constant, and every sample has a terminating chain.
  bool hypothesis_holds = false;
  /// The common alpha when the hypothesis holds.
  std::optional<int> k;
};

ManifoldReport sample_analysis(const ConstraintFamily& family, int sample_count, int k_max,
                               const SearchOptions& search = {}, const Tolerances& tol = {});

/// Subspace of L(R^n, R^m) (+) R^m, stored as orthonormal columns of
/// (vec(L), y) vectors.
class AugmentedSubspace {
 public:
  AugmentedSubspace() = default;

  static AugmentedSubspace make(int n, int m, const std::vector<std::pair<Matrix, Vector>>& generators,
                                const Tolerances& tol = {});
  /// V (+) R^m: constrains only the derivative.
  static AugmentedSubspace with_free_values(const MatrixSubspace& V);
  static AugmentedSubspace full(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  /// Projection onto the matrix factor.
  MatrixSubspace matrix_projection(const Tolerances& tol = {}) const;

 private:
  int n_ = 0;
  int m_ = 0;
  Matrix basis_;
};

struct JetSpaceReport {
  int degree = 0;
  bool consistent = false;
  /// Dimension of the linear part of the solution set; -1 when empty.
  int dimension = -1;
  /// Least-squares residual of the affine system.
  double residual = 0.0;
  /// A solution u (when consistent), components 0..degree.
  std::optional<PolyMap> particular;
  /// Basis of the linear part; u_0 = u_1 = 0 in every element.
  std::vector<PolyMap> basis;
};

/// Polynomial maps u of degree <= D with u(0) = 0, Du(0) = A and
/// (Du(xi), u(xi)) in V_aug, imposed on every Taylor coefficient that only
/// involves u_1, ..., u_D.
JetSpaceReport augmented_jet_space(const AugmentedSubspace& V_aug, const Matrix& A, int degree,
                                   const Tolerances& tol = {});

}  // namespace rigid
