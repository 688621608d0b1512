#include "slicecert/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "slicecert/errors.hpp"

namespace slicecert {

namespace {

constexpr int kMaxNewtonIterations = 50;
constexpr double kNewtonTol = 1e-12;

/// Nelder-Mead minimization of f starting from x0 with initial edge `size`.
template <class F>
Vec nelder_mead(const F& f, const Vec& x0, double size, double& best_value, int max_iterations = 400) {
  const Eigen::Index m = x0.size();
  std::vector<Vec> simplex{x0};
  for (Eigen::Index i = 0; i < m; ++i) {
    Vec v = x0;
    v(i) += size;
    simplex.push_back(v);
  }
  std::vector<double> values;
  for (const auto& v : simplex) values.push_back(f(v));
  std::vector<std::size_t> order(simplex.size());

  for (int iter = 0; iter < max_iterations; ++iter) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::size_t lo = order.front(), hi = order.back(), second = order[order.size() - 2];
    if (std::abs(values[hi] - values[lo]) <= 1e-13 * (1.0 + std::abs(values[lo]))) {
      double spread = 0.0;
      for (const auto& v : simplex) spread = std::max(spread, (v - simplex[lo]).lpNorm<Eigen::Infinity>());
      if (spread <= 1e-10 * (1.0 + simplex[lo].lpNorm<Eigen::Infinity>())) break;
    }

    Vec centroid = Vec::Zero(m);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != hi) centroid += simplex[i];
    centroid /= static_cast<double>(m);

    Vec reflected = centroid + (centroid - simplex[hi]);
    double fr = f(reflected);
    if (fr < values[lo]) {
      Vec expanded = centroid + 2.0 * (centroid - simplex[hi]);
      double fe = f(expanded);
      if (fe < fr) {
        simplex[hi] = expanded;
        values[hi] = fe;
      } else {
        simplex[hi] = reflected;
        values[hi] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[hi] = reflected;
      values[hi] = fr;
      continue;
    }
    Vec contracted = fr < values[hi] ? Vec(centroid + 0.5 * (reflected - centroid))
                                     : Vec(centroid + 0.5 * (simplex[hi] - centroid));
    double fc = f(contracted);
    if (fc < std::min(fr, values[hi])) {
      simplex[hi] = contracted;
      values[hi] = fc;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == lo) continue;
      simplex[i] = simplex[lo] + 0.5 * (simplex[i] - simplex[lo]);
      values[i] = f(simplex[i]);
    }
  }
  std::size_t lo = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  best_value = values[lo];
  return simplex[lo];
}

/// Half-width of a box of exponential coordinates covering one period of
/// every basis direction of k.
double exponential_box(const LieAlgebraBasis& algebra, const Subalgebra& k) {
  double slowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k.dim(); ++i) {
    Eigen::EigenSolver<Mat> eig(algebra.matrix(k.element(i)), false);
    for (Eigen::Index j = 0; j < eig.eigenvalues().size(); ++j) {
      double freq = std::abs(eig.eigenvalues()(j).imag());
      if (freq > 1e-12) slowest = std::min(slowest, freq);
    }
  }
  if (!std::isfinite(slowest)) return std::numbers::pi;
  return std::numbers::pi / slowest;
}

}  // namespace

Vec HamiltonianFlow::vector_field(const Vec& x) const {
  return system_->space().omega_inverse().transpose() * system_->hamiltonian().gradient(x);
}

Vec HamiltonianFlow::step(const Vec& x, double dt) const {
  const Mat& omega_inv_t = system_->space().omega_inverse().transpose();
  const auto& h = system_->hamiltonian();
  const Eigen::Index n = x.size();
  Vec y = x + dt * vector_field(x);
  double tol = kNewtonTol * std::max(1.0, x.norm());
  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    Vec mid = 0.5 * (x + y);
    Vec residual = y - x - dt * (omega_inv_t * h.gradient(mid));
    if (!residual.allFinite()) break;
    bool converged = residual.norm() <= tol;
    Mat jac = Mat::Identity(n, n) - 0.5 * dt * omega_inv_t * h.hessian(mid);
    y -= jac.partialPivLu().solve(residual);
    if (converged) return y;
  }
  throw SolverDiverged("implicit midpoint solve did not converge in " + std::to_string(kMaxNewtonIterations) +
                       " iterations");
}

std::vector<Vec> HamiltonianFlow::integrate(const Vec& x0, double dt, int steps) const {
  if (!(dt > 0.0)) throw PreconditionViolated("dt must be positive");
  if (steps < 1) throw PreconditionViolated("steps must be at least 1");
  if (x0.size() != system_->dim()) throw DimensionMismatch("initial point has the wrong dimension");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(x0);
  for (int i = 0; i < steps; ++i) out.push_back(step(out.back(), dt));
  return out;
}

OrbitDistance orbit_distance(const SymmetricSystem& system, const Vec& x, const Vec& p, const Subalgebra& k,
                             const OrbitDistanceOptions& options, const std::vector<Vec>& warm_starts) {
  const auto& space = system.space();
  const auto& algebra = system.algebra();
  OrbitDistance best{space.norm(x - p), Vec::Zero(k.dim())};
  if (k.dim() == 0) return best;
  bool moves = false;
  for (int i = 0; i < k.dim(); ++i)
    if ((algebra.matrix(k.element(i)) * p).norm() > 0.0) moves = true;
  if (!moves) return best;

  auto objective = [&](const Vec& t) {
    AlgebraVector xi(k.basis * t);
    return space.norm(x - group_exp(algebra, xi) * p);
  };

  double box = exponential_box(algebra, k);
  std::vector<Vec> starts{Vec::Zero(k.dim())};
  for (const auto& w : warm_starts)
    if (w.size() == k.dim()) starts.push_back(w);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-box, box);
  for (int s = 0; s < options.starts; ++s) {
    Vec t(k.dim());
    for (int i = 0; i < k.dim(); ++i) t(i) = unit(rng);
    starts.push_back(std::move(t));
  }
  for (const auto& t0 : starts) {
    double value = 0.0;
    Vec t = nelder_mead(objective, t0, box / 8.0, value);
    if (value < best.distance) best = OrbitDistance{value, t};
  }
  return best;
}

ProbeReport stability_probe(const SymmetricSystem& system, const Vec& p, const Subalgebra& k,
                            const ProbeOptions& options, const TrajectorySink& sink) {
  if (!(options.epsilon > 0.0)) throw PreconditionViolated("epsilon must be positive");
  if (!(options.dt > 0.0)) throw PreconditionViolated("dt must be positive");
  if (options.samples < 1) throw PreconditionViolated("samples must be at least 1");
  if (p.size() != system.dim()) throw DimensionMismatch("point has the wrong dimension");

  const int n = system.dim();
  const int steps = std::max(1, static_cast<int>(std::ceil(options.horizon / options.dt - 1e-9)));
  const int stride = options.checkpoint_stride > 0 ? options.checkpoint_stride : std::max(1, steps / 200);
  const double escape_radius = options.escape_factor * options.epsilon;
  const auto& h = system.hamiltonian();
  const auto& momentum = system.momentum();
  HamiltonianFlow flow(system);

  ProbeReport report;
  report.epsilon = options.epsilon;
  report.horizon = options.horizon;
  report.samples = options.samples;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::LLT<Mat> metric_chol(system.space().metric());

  for (int sample = 0; sample < options.samples; ++sample) {
    // Uniform in the metric ball: Gaussian direction in whitened coordinates.
    Vec z(n);
    for (int i = 0; i < n; ++i) z(i) = gauss(rng);
    Vec direction = metric_chol.matrixU().solve(z);
    direction /= system.space().norm(direction);
    double radius = options.epsilon * std::pow(unit(rng), 1.0 / n);
    Vec x = p + radius * direction;

    const double h0 = h.eval(x);
    const Vec j0 = momentum(x).coords;
    Vec warm;
    auto checkpoint = [&](int step_index) {
      OrbitDistanceOptions od;
      od.seed = options.seed + static_cast<std::uint64_t>(sample) * 7919u + static_cast<std::uint64_t>(step_index);
      // After the first checkpoint the previous minimizer is a good start.
      if (warm.size() > 0) od.starts = 4;
      std::vector<Vec> warm_starts;
      if (warm.size() > 0) warm_starts.push_back(warm);
      OrbitDistance dist = orbit_distance(system, x, p, k, od, warm_starts);
      warm = dist.coords;
      report.max_orbit_distance = std::max(report.max_orbit_distance, dist.distance);
      if (sink) sink(sample, TrajectoryRow{step_index * options.dt, x, h.eval(x), momentum(x).coords, dist.distance});
      return dist.distance;
    };

    checkpoint(0);
    try {
      for (int step = 1; step <= steps; ++step) {
        x = flow.step(x, options.dt);
        report.energy_drift = std::max(report.energy_drift, std::abs(h.eval(x) - h0));
        if (j0.size() > 0) report.momentum_drift = std::max(report.momentum_drift, (momentum(x).coords - j0).norm());
        if (step % stride == 0 || step == steps) {
          if (checkpoint(step) > escape_radius) {
            report.escaped = true;
            double t = step * options.dt;
            report.escape_time = report.escape_time ? std::min(*report.escape_time, t) : t;
            break;
          }
        }
      }
    } catch (const SolverDiverged&) {
      ++report.diverged_samples;
      report.escaped = true;
    }
  }
  return report;
}

}  // namespace slicecert
