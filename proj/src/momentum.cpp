#include "slicecert/momentum.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "slicecert/errors.hpp"

namespace slicecert {

MomentumMap::MomentumMap(const SymplecticSpace& space, const LieAlgebraBasis& algebra)
    : phase_dim_(space.dim()), metric_(space.metric()) {
  if (algebra.phase_dim() != space.dim()) throw DimensionMismatch("algebra and phase space dimensions differ");
  for (const auto& a : algebra.generators()) {
    Mat m = symmetrize(-space.omega() * a);
    components_.push_back(Poly::quadratic_form(m));
    hessians_.push_back(std::move(m));
  }
}

Poly MomentumMap::along(const AlgebraVector& xi) const {
  if (xi.dim() != dim()) throw DimensionMismatch("algebra vector has the wrong length");
  Poly out(phase_dim_);
  for (int i = 0; i < dim(); ++i)
    if (xi.coords(i) != 0.0) out += xi.coords(i) * components_[i];
  return out;
}

Mat MomentumMap::hessian_along(const AlgebraVector& xi) const {
  if (xi.dim() != dim()) throw DimensionMismatch("algebra vector has the wrong length");
  Mat out = Mat::Zero(phase_dim_, phase_dim_);
  for (int i = 0; i < dim(); ++i) out += xi.coords(i) * hessians_[i];
  return out;
}

MomentumValue MomentumMap::operator()(const Vec& x) const {
  if (x.size() != phase_dim_) throw DimensionMismatch("point has the wrong dimension");
  Vec mu(dim());
  for (int i = 0; i < dim(); ++i) mu(i) = 0.5 * x.dot(hessians_[i] * x);
  return MomentumValue(mu);
}

Mat MomentumMap::differential(const Vec& p) const {
  if (p.size() != phase_dim_) throw DimensionMismatch("point has the wrong dimension");
  Mat rows(dim(), phase_dim_);
  for (int i = 0; i < dim(); ++i) rows.row(i) = (hessians_[i] * p).transpose();
  return rows;
}

Mat MomentumMap::kernel_basis(const Vec& p) const {
  return orthonormalize(nullspace(differential(p)), metric_);
}

Mat ad_star_matrix(const LieAlgebraBasis& algebra, const AlgebraVector& eta) {
  const int d = algebra.dim();
  if (eta.dim() != d) throw DimensionMismatch("algebra vector has the wrong length");
  const auto& c = algebra.structure();
  // (ad*_eta mu)_j = -sum_{i,k} eta_i c(i, j, k) mu_k
  Mat m = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (eta.coords(i) == 0.0) continue;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) m(j, k) -= eta.coords(i) * c(i, j, k);
  }
  return m;
}

MomentumValue ad_star(const LieAlgebraBasis& algebra, const AlgebraVector& eta, const MomentumValue& mu) {
  if (mu.dim() != algebra.dim()) throw DimensionMismatch("momentum value has the wrong length");
  return MomentumValue(ad_star_matrix(algebra, eta) * mu.coords);
}

MomentumValue coadjoint_transport(const LieAlgebraBasis& algebra, const AlgebraVector& eta, double t,
                                  const MomentumValue& mu) {
  if (mu.dim() != algebra.dim()) throw DimensionMismatch("momentum value has the wrong length");
  if (algebra.dim() == 0) return mu;
  Mat flow = (t * ad_star_matrix(algebra, eta)).exp();
  return MomentumValue(flow * mu.coords);
}

Subalgebra momentum_isotropy_algebra(const LieAlgebraBasis& algebra, const MomentumValue& mu) {
  const int d = algebra.dim();
  if (mu.dim() != d) throw DimensionMismatch("momentum value has the wrong length");
  if (d == 0) return Subalgebra{Mat(0, 0)};
  Mat map(d, d);
  for (int i = 0; i < d; ++i) map.col(i) = ad_star(algebra, AlgebraVector(Vec::Unit(d, i)), mu).coords;
  return make_subalgebra(algebra, nullspace(map));
}

double equivariance_residual(const MomentumMap& momentum, const LieAlgebraBasis& algebra, const Vec& x,
                             const AlgebraVector& eta, double t) {
  if (t == 0.0 || eta.coords.isZero(0.0)) return 0.0;
  Vec moved = group_exp(algebra, eta, t) * x;
  MomentumValue transported = coadjoint_transport(algebra, eta, t, momentum(x));
  return (momentum(moved).coords - transported.coords).norm();
}

}  // namespace slicecert
