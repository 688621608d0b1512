#include "slicecert/system.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "slicecert/errors.hpp"

namespace slicecert {

SymmetricSystem::SymmetricSystem(SymplecticSpace space, LieAlgebraBasis algebra, Poly hamiltonian,
                                 Mat algebra_metric)
    : space_(std::move(space)),
      algebra_(std::move(algebra)),
      momentum_(space_, algebra_),
      hamiltonian_(std::move(hamiltonian)),
      algebra_metric_(std::move(algebra_metric)) {
  if (hamiltonian_.num_vars() != space_.dim())
    throw ValidationError("hamiltonian variables do not match the phase-space dimension");
  const int d = algebra_.dim();
  if (algebra_metric_.size() == 0) {
    algebra_metric_ = algebra_.gram();
  } else {
    if (algebra_metric_.rows() != d || algebra_metric_.cols() != d)
      throw ValidationError("algebraMetric has the wrong shape");
    if (max_abs(algebra_metric_ - algebra_metric_.transpose()) > 1e-12 * std::max(1.0, max_abs(algebra_metric_)))
      throw ValidationError("algebraMetric is not symmetric");
    if (d > 0) {
      Eigen::SelfAdjointEigenSolver<Mat> eig(algebra_metric_, Eigen::EigenvaluesOnly);
      if (!(eig.eigenvalues().minCoeff() > 0.0)) throw ValidationError("algebraMetric is not positive definite");
    }
  }
}

Mat SymmetricSystem::augmented_hessian(const Vec& p, const AlgebraVector& xi) const {
  return hamiltonian_.hessian(p) - momentum_.hessian_along(xi);
}

Vec SymmetricSystem::augmented_gradient(const Vec& p, const AlgebraVector& xi) const {
  return hamiltonian_.gradient(p) - momentum_.hessian_along(xi) * p;
}

double SymmetricSystem::velocity_residual(const Vec& p, const AlgebraVector& xi) const {
  return augmented_gradient(p, xi).norm() / (1.0 + hamiltonian_.gradient(p).norm());
}

double invariance_defect(const SymmetricSystem& system, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int n = system.dim();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec x(n);
    for (int k = 0; k < n; ++k) x(k) = unit(rng);
    Vec grad = system.hamiltonian().gradient(x);
    for (const auto& a : system.algebra().generators()) {
      Vec ax = a * x;
      double value = std::abs(grad.dot(ax));
      worst = std::max(worst, value / (1.0 + grad.norm() * ax.norm()));
    }
  }
  return worst;
}

}  // namespace slicecert
