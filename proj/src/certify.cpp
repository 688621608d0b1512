#include "slicecert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "slicecert/errors.hpp"

namespace slicecert {

namespace {

constexpr double kVelocityTol = 1e-9;

struct Ascent {
  Vec s;
  double value = -std::numeric_limits<double>::infinity();
};

/// lambda_min of sign * (h0 + sum s_i h_i) over a box, by projected
/// supergradient ascent with step halving.
class MinEigenAscent {
 public:
  MinEigenAscent(Mat h0, std::vector<Mat> directions, double box, int max_iterations)
      : h0_(std::move(h0)), directions_(std::move(directions)), box_(box), max_iterations_(max_iterations) {
    double sq = 0.0;
    for (const auto& d : directions_) {
      double spectral = d.size() == 0 ? 0.0 : Eigen::JacobiSVD<Mat>(d).singularValues()(0);
      sq += spectral * spectral;
    }
    lipschitz_ = std::sqrt(sq);
  }

  Mat matrix_at(const Vec& s) const {
    Mat h = h0_;
    for (std::size_t i = 0; i < directions_.size(); ++i) h += s(static_cast<Eigen::Index>(i)) * directions_[i];
    return h;
  }

  double value(const Vec& s) const {
    Mat h = matrix_at(s);
    if (h.size() == 0) return std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Mat> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
  }

  Ascent run(Vec s) const {
    const Eigen::Index m = s.size();
    double step = std::max(1.0, box_ / 10.0);
    Ascent best{s, value(s)};
    if (m == 0 || directions_.empty()) return best;
    for (int iter = 0; iter < max_iterations_; ++iter) {
      Mat h = matrix_at(best.s);
      Eigen::SelfAdjointEigenSolver<Mat> eig(h);
      const Vec& lambda = eig.eigenvalues();
      double scale = std::max(1.0, max_abs(h));
      double cluster = std::max(1e-12 * scale, step * lipschitz_);
      Vec g = Vec::Zero(m);
      int count = 0;
      for (Eigen::Index j = 0; j < lambda.size() && lambda(j) <= lambda(0) + cluster; ++j) {
        Vec u = eig.eigenvectors().col(j);
        for (Eigen::Index i = 0; i < m; ++i) g(i) += u.dot(directions_[static_cast<std::size_t>(i)] * u);
        ++count;
      }
      g /= static_cast<double>(count);
      double gnorm = g.norm();
      if (gnorm <= 1e-15 * (1.0 + lipschitz_)) {
        if (cluster <= 1e-12 * scale) break;
        step *= 0.5;
        continue;
      }
      Vec trial = (best.s + (step / gnorm) * g).cwiseMax(-box_).cwiseMin(box_);
      double trial_value = value(trial);
      if (trial_value > best.value && (trial - best.s).norm() > 0.0) {
        best = Ascent{trial, trial_value};
        step = std::min(2.0 * step, box_);
      } else {
        step *= 0.5;
        if (step < 1e-14 * std::max(1.0, best.s.lpNorm<Eigen::Infinity>())) break;
      }
    }
    return best;
  }

 private:
  Mat h0_;
  std::vector<Mat> directions_;
  double box_;
  int max_iterations_;
  double lipschitz_ = 0.0;
};

Vec ascending_spectrum(const Mat& h) {
  if (h.size() == 0) return Vec(0);
  return Eigen::SelfAdjointEigenSolver<Mat>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

double scaled_min_eigenvalue(const Mat& h) {
  if (h.size() == 0) return std::numeric_limits<double>::infinity();
  return ascending_spectrum(h)(0) / definiteness_scale(h);
}

void fill_spectrum(StabilityCertificate& cert, const Mat& h) {
  cert.spectrum = ascending_spectrum(h);
  cert.margin = cert.spectrum.size() == 0 ? std::numeric_limits<double>::infinity()
                                          : cert.spectrum.cwiseAbs().minCoeff();
}

}  // namespace

AlgebraVector VelocityFamily::member(const Vec& s) const {
  if (s.size() != dim()) throw DimensionMismatch("family coordinates have the wrong length");
  if (dim() == 0) return xi1;
  return AlgebraVector(xi1.coords + directions.basis * s);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::StablePositiveDefinite:
      return "STABLE_POS_DEF";
    case Verdict::StableNegativeDefinite:
      return "STABLE_NEG_DEF";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

VelocityFamily solve_velocities(const SymmetricSystem& system, const Vec& p) {
  if (p.size() != system.dim()) throw DimensionMismatch("point has the wrong dimension");
  const int d = system.algebra_dim();
  Vec dh = system.hamiltonian().gradient(p);
  Mat columns = system.momentum().differential(p).transpose();
  Vec xi = min_norm_solve(columns, dh);
  double residual = (d == 0 ? dh : Vec(dh - columns * xi)).norm();
  if (residual > kVelocityTol * (1.0 + dh.norm()))
    throw NotRelativeEquilibrium("p is not a relative equilibrium: ||dh(p) - dJ_xi(p)|| = " +
                                 std::to_string(residual) + " for the best xi");
  return VelocityFamily{AlgebraVector(xi), isotropy_algebra(system.algebra(), p)};
}

Mat restricted_hessian(const SymmetricSystem& system, const Vec& p, const AlgebraVector& xi,
                       const WittArtinFrame& frame) {
  if (system.velocity_residual(p, xi) > kVelocityTol)
    throw PreconditionViolated("xi is not a velocity of the relative equilibrium");
  return symmetrize(frame.n.transpose() * system.augmented_hessian(p, xi) * frame.n);
}

double definiteness_scale(const Mat& h) { return std::max(1.0, max_abs(h)); }

Inertia inertia(const Mat& h, double threshold) {
  Inertia out;
  if (h.size() == 0) return out;
  double scale = definiteness_scale(h);
  Vec lambda = ascending_spectrum(h);
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    double v = lambda(i) / scale;
    if (v > threshold)
      ++out.positive;
    else if (v < -threshold)
      ++out.negative;
    else
      ++out.zero;
  }
  return out;
}

StabilityCertificate certificate_at(const SymmetricSystem& system, const Vec& p, const AlgebraVector& xi,
                                    const VelocityFamily& family, const WittArtinFrame& frame, double threshold) {
  StabilityCertificate cert;
  cert.compactness_verified = compactness_certificate(system.algebra(), system.space().metric());
  cert.inertia_at_xi1 = inertia(restricted_hessian(system, p, family.xi1, frame), threshold);
  Mat h = restricted_hessian(system, p, xi, frame);
  cert.xi_star = xi;
  cert.best_positive_margin = scaled_min_eigenvalue(h);
  cert.best_negative_margin = scaled_min_eigenvalue(-h);
  fill_spectrum(cert, h);
  if (cert.best_positive_margin > threshold)
    cert.verdict = Verdict::StablePositiveDefinite;
  else if (cert.best_negative_margin > threshold)
    cert.verdict = Verdict::StableNegativeDefinite;
  return cert;
}

StabilityCertificate definiteness_search(const SymmetricSystem& system, const Vec& p, const VelocityFamily& family,
                                         const WittArtinFrame& frame, const SearchOptions& options) {
  const int m = family.dim();
  Mat h0 = restricted_hessian(system, p, family.xi1, frame);
  std::vector<Mat> directions;
  for (int i = 0; i < m; ++i)
    directions.push_back(
        symmetrize(-frame.n.transpose() * system.momentum().hessian_along(family.directions.element(i)) * frame.n));

  std::vector<Vec> starts{Vec::Zero(m)};
  if (m > 0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(-options.box, options.box);
    for (int r = 0; r < options.restarts; ++r) {
      Vec s(m);
      for (int i = 0; i < m; ++i) s(i) = unit(rng);
      starts.push_back(std::move(s));
    }
  }

  auto best_for = [&](double sign) {
    std::vector<Mat> signed_dirs;
    for (const auto& d : directions) signed_dirs.push_back(sign * d);
    MinEigenAscent ascent(sign * h0, std::move(signed_dirs), options.box, options.max_iterations);
    Ascent best;
    best.s = Vec::Zero(m);
    for (const auto& s0 : starts) {
      Ascent a = ascent.run(s0);
      if (a.value > best.value) best = a;
    }
    return best;
  };

  Ascent pos = best_for(1.0);
  Ascent neg = best_for(-1.0);
  Mat h_pos = restricted_hessian(system, p, family.member(pos.s), frame);
  Mat h_neg = restricted_hessian(system, p, family.member(neg.s), frame);
  double pos_margin = scaled_min_eigenvalue(h_pos);
  double neg_margin = scaled_min_eigenvalue(-h_neg);

  StabilityCertificate cert;
  cert.compactness_verified = compactness_certificate(system.algebra(), system.space().metric());
  cert.inertia_at_xi1 = inertia(h0, options.threshold);
  cert.best_positive_margin = pos_margin;
  cert.best_negative_margin = neg_margin;

  // Both signs can certify (e.g. a definite isotropy direction in the family);
  // then positive wins so the verdict does not hinge on optimizer noise.
  bool use_pos = pos_margin > options.threshold || (neg_margin <= options.threshold && pos_margin >= neg_margin);
  const Vec& s_star = use_pos ? pos.s : neg.s;
  cert.xi_star = family.member(s_star);
  fill_spectrum(cert, use_pos ? h_pos : h_neg);
  if (use_pos && pos_margin > options.threshold)
    cert.verdict = Verdict::StablePositiveDefinite;
  else if (!use_pos && neg_margin > options.threshold)
    cert.verdict = Verdict::StableNegativeDefinite;
  cert.boundary_hit = m > 0 && s_star.lpNorm<Eigen::Infinity>() >= options.box * (1.0 - 1e-9);
  return cert;
}

AlgebraVector orthogonal_velocity(const VelocityFamily& family, const Mat& algebra_metric) {
  if (family.dim() == 0) return family.xi1;
  const Mat& h = family.directions.basis;
  Mat gram = h.transpose() * algebra_metric * h;
  Vec coeffs = gram.ldlt().solve(h.transpose() * algebra_metric * family.xi1.coords);
  return AlgebraVector(family.xi1.coords - h * coeffs);
}

}  // namespace slicecert
