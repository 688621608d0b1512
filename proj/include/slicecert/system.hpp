#pragma once

#include <cstdint>

#include "slicecert/momentum.hpp"
#include "slicecert/phase_space.hpp"
#include "slicecert/symmetry.hpp"

namespace slicecert {

/// A symmetric Hamiltonian system: phase space, linear symmetry, invariant
/// polynomial Hamiltonian and an inner product on the algebra.
class SymmetricSystem {
 public:
  /// algebra_metric defaults to the Frobenius Gram matrix when empty.
  SymmetricSystem(SymplecticSpace space, LieAlgebraBasis algebra, Poly hamiltonian, Mat algebra_metric = Mat());

  const SymplecticSpace& space() const { return space_; }
  const LieAlgebraBasis& algebra() const { return algebra_; }
  const MomentumMap& momentum() const { return momentum_; }
  const Poly& hamiltonian() const { return hamiltonian_; }
  const Mat& algebra_metric() const { return algebra_metric_; }
  int dim() const { return space_.dim(); }
  int algebra_dim() const { return algebra_.dim(); }

  /// Hessian of the augmented Hamiltonian h - J_xi at p.
  Mat augmented_hessian(const Vec& p, const AlgebraVector& xi) const;
  /// Gradient of h - J_xi at p.
  Vec augmented_gradient(const Vec& p, const AlgebraVector& xi) const;
  /// ||d(h - J_xi)(p)|| / (1 + ||dh(p)||); zero iff xi is a velocity at p.
  double velocity_residual(const Vec& p, const AlgebraVector& xi) const;

 private:
  SymplecticSpace space_;
  LieAlgebraBasis algebra_;
  MomentumMap momentum_;
  Poly hamiltonian_;
  Mat algebra_metric_;
};

/// Largest relative violation of dh(x) . A_i x = 0 over `samples` random
/// points in the unit box.
double invariance_defect(const SymmetricSystem& system, int samples = 100, std::uint64_t seed = 7);

}  // namespace slicecert
