#pragma once

#include <vector>

#include "slicecert/phase_space.hpp"
#include "slicecert/symmetry.hpp"

namespace slicecert {

/// Value of the momentum map, in the basis dual to the generators.
struct MomentumValue {
  Vec coords;

  MomentumValue() = default;
  explicit MomentumValue(Vec c) : coords(std::move(c)) {}
  int dim() const { return static_cast<int>(coords.size()); }
};

/// Quadratic momentum map of a linear symplectic action.
///
/// J_i(x) = -1/2 x^T Omega A_i x, so that dJ_i(x) v = omega(A_i x, v) and the
/// constant term vanishes. The map is coadjoint equivariant.
class MomentumMap {
 public:
  MomentumMap(const SymplecticSpace& space, const LieAlgebraBasis& algebra);

  int dim() const { return static_cast<int>(components_.size()); }
  const Poly& component(int i) const { return components_.at(static_cast<std::size_t>(i)); }
  const std::vector<Poly>& components() const { return components_; }

  /// J_xi = sum xi_i J_i.
  Poly along(const AlgebraVector& xi) const;
  /// Hessian of J_xi (constant in x).
  Mat hessian_along(const AlgebraVector& xi) const;

  MomentumValue operator()(const Vec& x) const;

  /// d x 2n matrix whose rows are dJ_i(p).
  Mat differential(const Vec& p) const;
  /// Metric-orthonormal basis of ker dJ(p), as columns.
  Mat kernel_basis(const Vec& p) const;

 private:
  int phase_dim_;
  Mat metric_;
  std::vector<Mat> hessians_;  // constant Hessians -Omega A_i (symmetric)
  std::vector<Poly> components_;
};

/// Infinitesimal coadjoint action: <ad*_eta mu, xi> = -<mu, [eta, xi]>.
MomentumValue ad_star(const LieAlgebraBasis& algebra, const AlgebraVector& eta, const MomentumValue& mu);

/// Matrix of mu |-> ad*_eta mu.
Mat ad_star_matrix(const LieAlgebraBasis& algebra, const AlgebraVector& eta);

/// Coad_{exp(t eta)} mu, the solution at time t of mu' = ad*_eta mu.
MomentumValue coadjoint_transport(const LieAlgebraBasis& algebra, const AlgebraVector& eta, double t,
                                  const MomentumValue& mu);

/// Lie algebra of the coadjoint isotropy of mu.
Subalgebra momentum_isotropy_algebra(const LieAlgebraBasis& algebra, const MomentumValue& mu);

/// || J(exp(t eta) x) - Coad_{exp(t eta)} J(x) ||.
double equivariance_residual(const MomentumMap& momentum, const LieAlgebraBasis& algebra, const Vec& x,
                             const AlgebraVector& eta, double t);

}  // namespace slicecert
