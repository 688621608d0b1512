#pragma once

#include <optional>
#include <vector>

#include "slicecert/linalg.hpp"
#include "slicecert/phase_space.hpp"

namespace slicecert {

/// Element of the Lie algebra, in coordinates of the generator basis.
struct AlgebraVector {
  Vec coords;

  AlgebraVector() = default;
  explicit AlgebraVector(Vec c) : coords(std::move(c)) {}
  static AlgebraVector zero(int d) { return AlgebraVector(Vec::Zero(d)); }

  int dim() const { return static_cast<int>(coords.size()); }
};

/// Structure constants c with [A_i, A_j] = sum_k c(i, j, k) A_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int d) : d_(d), data_(static_cast<std::size_t>(d) * d * d, 0.0) {}

  int dim() const { return d_; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double max_abs() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * d_ + j) * d_ + k;
  }
  int d_ = 0;
  std::vector<double> data_;
};

/// Least-squares expansion of every commutator in the generator basis.
/// Throws NotClosedUnderBracket when an expansion residual exceeds 1e-10
/// (relative to the commutator scale).
StructureConstants derive_structure_constants(const std::vector<Mat>& generators);

/// Finite-dimensional Lie algebra acting linearly and symplectically on a
/// phase space through the matrices A_1..A_d.
class LieAlgebraBasis {
 public:
  /// Validates independence, the Hamiltonian property under `omega`,
  /// bracket closure and the Jacobi identity. Structure constants are derived
  /// when not supplied. Throws ValidationError / NotClosedUnderBracket.
  LieAlgebraBasis(const Mat& omega, std::vector<Mat> generators,
                  std::optional<StructureConstants> structure = std::nullopt);

  int dim() const { return static_cast<int>(generators_.size()); }
  int phase_dim() const { return phase_dim_; }
  const std::vector<Mat>& generators() const { return generators_; }
  const StructureConstants& structure() const { return structure_; }

  /// Frobenius Gram matrix tr(A_i^T A_j): the algebra inner product.
  const Mat& gram() const { return gram_; }

  /// A(xi) = sum xi_i A_i.
  Mat matrix(const AlgebraVector& xi) const;
  /// d x m matrix of coordinates -> the element for column j.
  Mat matrix(const Vec& coords) const { return matrix(AlgebraVector(coords)); }

 private:
  int phase_dim_;
  std::vector<Mat> generators_;
  StructureConstants structure_;
  Mat gram_;
};

/// Subalgebra given by an orthonormal basis (columns, algebra coordinates)
/// under the algebra inner product.
struct Subalgebra {
  Mat basis;  // d x m

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  AlgebraVector element(int i) const { return AlgebraVector(basis.col(i)); }
};

Vec infinitesimal_action(const LieAlgebraBasis& algebra, const AlgebraVector& xi, const Vec& x);

/// Coordinates of [xi, eta]; matches the matrix commutator [A(xi), A(eta)].
AlgebraVector bracket(const LieAlgebraBasis& algebra, const AlgebraVector& xi, const AlgebraVector& eta);

/// Whole algebra as a subalgebra.
Subalgebra full_subalgebra(const LieAlgebraBasis& algebra);

/// Orthonormalizes an arbitrary spanning set (columns) of a subspace of g.
Subalgebra make_subalgebra(const LieAlgebraBasis& algebra, const Mat& spanning);

/// Largest residual of brackets of basis elements outside the span.
double closure_residual(const LieAlgebraBasis& algebra, const Subalgebra& sub);

/// Largest residual of the columns of `sub` outside `super`.
double containment_residual(const LieAlgebraBasis& algebra, const Subalgebra& sub, const Subalgebra& super);

/// Lie algebra of the isotropy group at p: nullspace of xi |-> A(xi) p.
Subalgebra isotropy_algebra(const LieAlgebraBasis& algebra, const Vec& p);

/// n = { xi in k : [xi, h] subset h }. Throws SubalgebraNotContained if h is
/// not inside k.
Subalgebra normalizer_algebra(const LieAlgebraBasis& algebra, const Subalgebra& h, const Subalgebra& k);

/// Sufficient condition for compactness of the generated group: every
/// generator is skew with respect to `metric`.
bool compactness_certificate(const LieAlgebraBasis& algebra, const Mat& metric);

/// exp(t A(xi)).
Mat group_exp(const LieAlgebraBasis& algebra, const AlgebraVector& xi, double t = 1.0);

}  // namespace slicecert
