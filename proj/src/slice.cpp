#include "slicecert/slice.hpp"

#include <cmath>
#include <string>

#include "slicecert/errors.hpp"

namespace slicecert {

namespace {

constexpr double kSliceDetTol = 1e-9;
constexpr double kKernelTol = 1e-10;
constexpr double kVelocityTol = 1e-9;
constexpr double kMembershipTol = 1e-9;

std::string dims_string(const WittArtinDims& d) {
  return "(" + std::to_string(d.t0) + ", " + std::to_string(d.t) + ", " + std::to_string(d.n) + ", " +
         std::to_string(d.n0) + ")";
}

}  // namespace

WittArtinFrame witt_artin(const SymmetricSystem& system, const Vec& p) {
  const int n = system.dim();
  if (p.size() != n) throw DimensionMismatch("point has the wrong dimension");
  const auto& algebra = system.algebra();
  const Mat& metric = system.space().metric();

  WittArtinFrame frame;
  frame.point = p;
  frame.mu = system.momentum()(p);
  frame.isotropy = isotropy_algebra(algebra, p);
  frame.momentum_isotropy = momentum_isotropy_algebra(algebra, frame.mu);

  const int d = algebra.dim();
  Mat orbit(n, d);
  for (int i = 0; i < d; ++i) orbit.col(i) = algebra.generators()[i] * p;
  Mat orbit_basis = orthonormalize(orbit, metric);

  const Subalgebra& k = frame.momentum_isotropy;
  Mat k_orbit(n, k.dim());
  for (int i = 0; i < k.dim(); ++i) k_orbit.col(i) = algebra.matrix(k.element(i)) * p;
  frame.t0 = orthonormalize(k_orbit, metric);

  Mat kernel = system.momentum().kernel_basis(p);
  frame.n = complement_within(kernel, frame.t0, metric);
  frame.t = complement_within(orbit_basis, frame.t0, metric);

  Mat both(n, orbit_basis.cols() + kernel.cols());
  both << orbit_basis, kernel;
  Mat sum_basis = orthonormalize(both, metric);
  frame.n0 = complement_within(orthonormalize(Mat::Identity(n, n), metric), sum_basis, metric);

  WittArtinDims got = frame.dims();
  WittArtinDims expected{k.dim() - frame.isotropy.dim(), d - k.dim(), 0, k.dim() - frame.isotropy.dim()};
  expected.n = n - expected.t0 - expected.t - expected.n0;
  if (!(got == expected))
    throw DegenerateSliceForm("Witt-Artin dimensions " + dims_string(got) + " differ from the expected " +
                              dims_string(expected) + "; rank tolerance may be miscalibrated");

  if (frame.slice_dim() > 0) {
    double det = slice_symplectic_form(system, frame).determinant();
    if (!(std::abs(det) > kSliceDetTol))
      throw DegenerateSliceForm("omega restricted to the slice is degenerate (|det| = " + std::to_string(std::abs(det)) +
                                ")");
  }
  return frame;
}

Mat slice_symplectic_form(const SymmetricSystem& system, const WittArtinFrame& frame) {
  return frame.n.transpose() * system.space().omega() * frame.n;
}

Mat t0_n0_pairing(const SymmetricSystem& system, const WittArtinFrame& frame) {
  return frame.t0.transpose() * system.space().omega() * frame.n0;
}

Vec slice_momentum_map(const SymmetricSystem& system, const WittArtinFrame& frame, const Vec& v) {
  if (v.size() != frame.slice_dim()) throw DimensionMismatch("slice coordinates have the wrong length");
  Vec w = frame.n * v;
  const Subalgebra& h = frame.isotropy;
  Vec out(h.dim());
  for (int j = 0; j < h.dim(); ++j) out(j) = 0.5 * w.dot(system.momentum().hessian_along(h.element(j)) * w);
  return out;
}

double descent_residual(const SymmetricSystem& system, const Vec& p, const AlgebraVector& xi, const Vec& v,
                        const AlgebraVector& eta) {
  const auto& momentum = system.momentum();
  Mat dj = momentum.differential(p);
  if (v.size() != system.dim()) throw DimensionMismatch("tangent vector has the wrong dimension");
  if (dj.rows() > 0 && (dj * v).norm() > kKernelTol * (1.0 + dj.norm() * v.norm()))
    throw PreconditionViolated("v is not in ker dJ(p)");
  if (system.velocity_residual(p, xi) > kVelocityTol) throw PreconditionViolated("xi is not a velocity of p");
  const auto& algebra = system.algebra();
  Subalgebra k = momentum_isotropy_algebra(algebra, momentum(p));
  if (eta.dim() != algebra.dim()) throw DimensionMismatch("algebra vector has the wrong length");
  double eta_norm = std::sqrt(std::max(0.0, eta.coords.dot(algebra.gram() * eta.coords)));
  if (projection_residual(eta.coords, k.basis, algebra.gram()) > kMembershipTol * std::max(1.0, eta_norm))
    throw PreconditionViolated("eta is not in the momentum isotropy algebra");

  Mat q = system.augmented_hessian(p, xi);
  Vec moved = v + algebra.matrix(eta) * p;
  return std::abs(moved.dot(q * moved) - v.dot(q * v));
}

}  // namespace slicecert
