#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "slicecert/symmetry.hpp"
#include "slicecert/system.hpp"

namespace slicecert {

/// Hamiltonian flow of an invariant polynomial Hamiltonian.
///
/// X_h is defined by omega(X_h(x), v) = dh(x) v, the convention under which
/// the flow of J_xi is the one-parameter group exp(t A(xi)).
class HamiltonianFlow {
 public:
  explicit HamiltonianFlow(const SymmetricSystem& system) : system_(&system) {}

  Vec vector_field(const Vec& x) const;

  /// One implicit midpoint step, Newton-solved to residual 1e-12.
  /// Throws SolverDiverged after 50 iterations without convergence.
  Vec step(const Vec& x, double dt) const;

  /// Returns steps + 1 points, starting with x0.
  std::vector<Vec> integrate(const Vec& x0, double dt, int steps) const;

 private:
  const SymmetricSystem* system_;
};

/// Approximates min over g in exp(k) of ||x - g p||_metric with a multi-start
/// Nelder-Mead search in exponential coordinates. Never exceeds ||x - p||.
struct OrbitDistanceOptions {
  int starts = 32;
  std::uint64_t seed = 42;
};

struct OrbitDistance {
  double distance = 0;
  Vec coords;  // exponential coordinates in the basis of k
};

OrbitDistance orbit_distance(const SymmetricSystem& system, const Vec& x, const Vec& p, const Subalgebra& k,
                             const OrbitDistanceOptions& options = {},
                             const std::vector<Vec>& warm_starts = {});

struct ProbeOptions {
  double epsilon = 1e-3;
  double horizon = 100.0;
  int samples = 16;
  double dt = 1e-2;
  double escape_factor = 100.0;
  /// Orbit distances are evaluated every `checkpoint_stride` steps and at the
  /// final step; 0 picks a stride giving about 200 checkpoints.
  int checkpoint_stride = 0;
  std::uint64_t seed = 42;
};

struct ProbeReport {
  double epsilon = 0;
  double horizon = 0;
  int samples = 0;
  double max_orbit_distance = 0;
  double energy_drift = 0;
  double momentum_drift = 0;
  bool escaped = false;
  int diverged_samples = 0;
  /// Integration time at which escape was first detected, if any.
  std::optional<double> escape_time;
};

/// One row per checkpoint: t, x, h, J, orbit distance.
struct TrajectoryRow {
  double t;
  Vec x;
  double h;
  Vec j;
  double orbit_distance;
};

using TrajectorySink = std::function<void(int sample, const TrajectoryRow&)>;

ProbeReport stability_probe(const SymmetricSystem& system, const Vec& p, const Subalgebra& k,
                            const ProbeOptions& options = {}, const TrajectorySink& sink = nullptr);

}  // namespace slicecert
