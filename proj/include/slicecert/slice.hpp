#pragma once

#include <array>

#include "slicecert/momentum.hpp"
#include "slicecert/symmetry.hpp"
#include "slicecert/system.hpp"

namespace slicecert {

struct WittArtinDims {
  int t0 = 0;
  int t = 0;
  int n = 0;
  int n0 = 0;

  int total() const { return t0 + t + n + n0; }
  friend bool operator==(const WittArtinDims&, const WittArtinDims&) = default;
};

/// Concrete bases (columns, metric-orthonormal) realizing the four pieces of
/// the tangent space at p: T0 = k.p, T completing T0 inside g.p, the slice N
/// completing T0 inside ker dJ(p), and N0 completing g.p + ker dJ(p).
struct WittArtinFrame {
  Vec point;
  MomentumValue mu;
  Subalgebra isotropy;           // h
  Subalgebra momentum_isotropy;  // k
  Mat t0;
  Mat t;
  Mat n;
  Mat n0;

  WittArtinDims dims() const {
    return {static_cast<int>(t0.cols()), static_cast<int>(t.cols()), static_cast<int>(n.cols()),
            static_cast<int>(n0.cols())};
  }
  int slice_dim() const { return static_cast<int>(n.cols()); }
};

/// Throws DegenerateSliceForm if the computed pieces violate the dimension
/// identities or omega restricted to N is degenerate.
WittArtinFrame witt_artin(const SymmetricSystem& system, const Vec& p);

/// omega(n_i, n_j) on the slice basis.
Mat slice_symplectic_form(const SymmetricSystem& system, const WittArtinFrame& frame);

/// omega(t_i, n0_j): the pairing of T0 with N0.
Mat t0_n0_pairing(const SymmetricSystem& system, const WittArtinFrame& frame);

/// Momentum of the isotropy action on the slice, in the dual of frame.isotropy.
Vec slice_momentum_map(const SymmetricSystem& system, const WittArtinFrame& frame, const Vec& v);

/// |Q(v + eta.p) - Q(v)| for Q = d^2(h - J_xi)(p). Throws PreconditionViolated
/// if v is not in ker dJ(p), xi is not a velocity, or eta is not in k.
double descent_residual(const SymmetricSystem& system, const Vec& p, const AlgebraVector& xi, const Vec& v,
                        const AlgebraVector& eta);

}  // namespace slicecert
