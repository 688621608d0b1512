#pragma once

#include <cstdint>
#include <string>

#include "slicecert/slice.hpp"
#include "slicecert/symmetry.hpp"
#include "slicecert/system.hpp"

namespace slicecert {

/// The affine set xi1 + h of velocities of a relative equilibrium.
struct VelocityFamily {
  AlgebraVector xi1;
  Subalgebra directions;  // h

  int dim() const { return directions.dim(); }
  AlgebraVector member(const Vec& s) const;
};

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

enum class Verdict { StablePositiveDefinite, StableNegativeDefinite, Inconclusive };

std::string to_string(Verdict v);

struct StabilityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  AlgebraVector xi_star;
  Vec spectrum;        // eigenvalues of the restricted Hessian at xi_star, ascending
  double margin = 0;   // min |eigenvalue| at xi_star
  bool compactness_verified = false;
  Inertia inertia_at_xi1;
  /// Best scaled lambda_min of H and of -H found by the search.
  double best_positive_margin = 0;
  double best_negative_margin = 0;
  /// The optimum sits on the boundary of the search box.
  bool boundary_hit = false;

  bool stable() const { return verdict != Verdict::Inconclusive; }
};

struct SearchOptions {
  double box = 1e3;
  int restarts = 20;
  int max_iterations = 500;
  double threshold = 1e-7;
  std::uint64_t seed = 42;
};

/// Solves dJ_xi(p) = dh(p) for xi. Throws NotRelativeEquilibrium when the
/// least-squares residual exceeds 1e-9 (1 + ||dh(p)||).
VelocityFamily solve_velocities(const SymmetricSystem& system, const Vec& p);

/// B^T d^2(h - J_xi)(p) B for the slice basis B. Throws PreconditionViolated
/// if xi is not a velocity at p.
Mat restricted_hessian(const SymmetricSystem& system, const Vec& p, const AlgebraVector& xi,
                       const WittArtinFrame& frame);

/// H / max(1, max|H_ij|): the matrix whose spectrum is compared to the
/// definiteness threshold.
double definiteness_scale(const Mat& h);
Inertia inertia(const Mat& h, double threshold = 1e-7);

/// Searches the family for a definite restricted Hessian by maximizing
/// lambda_min(H(s)) and lambda_min(-H(s)) with projected supergradient ascent.
StabilityCertificate definiteness_search(const SymmetricSystem& system, const Vec& p, const VelocityFamily& family,
                                         const WittArtinFrame& frame, const SearchOptions& options = {});

/// Certificate for a single fixed velocity, no search.
StabilityCertificate certificate_at(const SymmetricSystem& system, const Vec& p, const AlgebraVector& xi,
                                    const VelocityFamily& family, const WittArtinFrame& frame,
                                    double threshold = 1e-7);

/// The member of the family orthogonal to h under algebra_metric.
AlgebraVector orthogonal_velocity(const VelocityFamily& family, const Mat& algebra_metric);

}  // namespace slicecert
