#include "slicecert/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "slicecert/errors.hpp"

namespace slicecert {

namespace {

constexpr double kHamiltonianTol = 1e-12;
constexpr double kClosureTol = 1e-10;
constexpr double kJacobiTol = 1e-10;
constexpr double kSubalgebraTol = 1e-9;
constexpr double kSkewTol = 1e-10;

Mat flatten(const std::vector<Mat>& mats) {
  if (mats.empty()) return Mat(0, 0);
  Mat out(mats.front().size(), static_cast<Eigen::Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = mats[i].reshaped();
  return out;
}

double matrices_scale(const std::vector<Mat>& mats) {
  double s = 1.0;
  for (const auto& m : mats) s = std::max(s, max_abs(m));
  return s;
}

/// Matrix of xi |-> [xi, eta] in coordinates.
Mat right_bracket_matrix(const LieAlgebraBasis& algebra, const Vec& eta) {
  const int d = algebra.dim();
  const auto& c = algebra.structure();
  Mat m = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (eta(j) == 0.0) continue;
      for (int k = 0; k < d; ++k) m(k, i) += eta(j) * c(i, j, k);
    }
  return m;
}

}  // namespace

double StructureConstants::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

StructureConstants derive_structure_constants(const std::vector<Mat>& generators) {
  const int d = static_cast<int>(generators.size());
  StructureConstants c(d);
  if (d == 0) return c;
  Mat stack = flatten(generators);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(stack);
  double scale = matrices_scale(generators);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Mat comm = generators[i] * generators[j] - generators[j] * generators[i];
      Vec target = comm.reshaped();
      Vec coeffs = cod.solve(target);
      double residual = (stack * coeffs - target).cwiseAbs().maxCoeff();
      if (residual > kClosureTol * scale * scale)
        throw NotClosedUnderBracket("commutator of generators " + std::to_string(i) + " and " + std::to_string(j) +
                                    " leaves the span (residual " + std::to_string(residual) + ")");
      for (int k = 0; k < d; ++k) {
        c(i, j, k) = coeffs(k);
        c(j, i, k) = -coeffs(k);
      }
    }
  }
  return c;
}

LieAlgebraBasis::LieAlgebraBasis(const Mat& omega, std::vector<Mat> generators,
                                 std::optional<StructureConstants> structure)
    : phase_dim_(static_cast<int>(omega.rows())), generators_(std::move(generators)) {
  const int d = dim();
  for (int i = 0; i < d; ++i) {
    const Mat& a = generators_[i];
    if (a.rows() != phase_dim_ || a.cols() != phase_dim_)
      throw ValidationError("generator " + std::to_string(i) + " has the wrong shape");
    double scale = std::max(1.0, max_abs(a) * max_abs(omega));
    if (max_abs(a.transpose() * omega + omega * a) > kHamiltonianTol * scale)
      throw ValidationError("generator " + std::to_string(i) + " is not Hamiltonian (A^T Omega + Omega A != 0)");
  }
  if (d > 0 && numerical_rank(flatten(generators_)) != d)
    throw ValidationError("generators are linearly dependent");

  if (structure) {
    if (structure->dim() != d) throw ValidationError("structure constants have the wrong dimension");
    structure_ = std::move(*structure);
    double scale = matrices_scale(generators_);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Mat r = generators_[i] * generators_[j] - generators_[j] * generators_[i];
        for (int k = 0; k < d; ++k) r -= structure_(i, j, k) * generators_[k];
        if (max_abs(r) > kClosureTol * scale * scale)
          throw NotClosedUnderBracket("supplied structure constants do not reproduce [A_" + std::to_string(i) +
                                      ", A_" + std::to_string(j) + "]");
      }
  } else {
    structure_ = derive_structure_constants(generators_);
  }

  // Jacobi: [[e_i,e_j],e_k] + cyclic = 0.
  const auto& c = structure_;
  double cscale = std::max(1.0, c.max_abs() * c.max_abs());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m) {
          double s = 0.0;
          for (int l = 0; l < d; ++l)
            s += c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
          if (std::abs(s) > kJacobiTol * cscale) throw ValidationError("structure constants violate the Jacobi identity");
        }

  gram_ = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram_(i, j) = (generators_[i].array() * generators_[j].array()).sum();
}

Mat LieAlgebraBasis::matrix(const AlgebraVector& xi) const {
  if (xi.dim() != dim()) throw DimensionMismatch("algebra vector has the wrong length");
  Mat a = Mat::Zero(phase_dim_, phase_dim_);
  for (int i = 0; i < dim(); ++i)
    if (xi.coords(i) != 0.0) a += xi.coords(i) * generators_[i];
  return a;
}

Vec infinitesimal_action(const LieAlgebraBasis& algebra, const AlgebraVector& xi, const Vec& x) {
  if (x.size() != algebra.phase_dim()) throw DimensionMismatch("point has the wrong dimension");
  return algebra.matrix(xi) * x;
}

AlgebraVector bracket(const LieAlgebraBasis& algebra, const AlgebraVector& xi, const AlgebraVector& eta) {
  const int d = algebra.dim();
  if (xi.dim() != d || eta.dim() != d) throw DimensionMismatch("algebra vector has the wrong length");
  const auto& c = algebra.structure();
  Vec out = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (xi.coords(i) == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      double w = xi.coords(i) * eta.coords(j);
      if (w == 0.0) continue;
      for (int k = 0; k < d; ++k) out(k) += w * c(i, j, k);
    }
  }
  return AlgebraVector(out);
}

Subalgebra full_subalgebra(const LieAlgebraBasis& algebra) {
  return make_subalgebra(algebra, Mat::Identity(algebra.dim(), algebra.dim()));
}

Subalgebra make_subalgebra(const LieAlgebraBasis& algebra, const Mat& spanning) {
  if (spanning.rows() != algebra.dim()) throw DimensionMismatch("subalgebra spanning set has the wrong length");
  return Subalgebra{orthonormalize(spanning, algebra.gram())};
}

double closure_residual(const LieAlgebraBasis& algebra, const Subalgebra& sub) {
  double worst = 0.0;
  for (int i = 0; i < sub.dim(); ++i)
    for (int j = i + 1; j < sub.dim(); ++j) {
      Vec b = bracket(algebra, sub.element(i), sub.element(j)).coords;
      worst = std::max(worst, projection_residual(b, sub.basis, algebra.gram()));
    }
  return worst;
}

double containment_residual(const LieAlgebraBasis& algebra, const Subalgebra& sub, const Subalgebra& super) {
  if (sub.dim() == 0) return 0.0;
  return projection_residual(sub.basis, super.basis, algebra.gram());
}

Subalgebra isotropy_algebra(const LieAlgebraBasis& algebra, const Vec& p) {
  if (p.size() != algebra.phase_dim()) throw DimensionMismatch("point has the wrong dimension");
  const int d = algebra.dim();
  if (d == 0) return Subalgebra{Mat(0, 0)};
  Mat action(p.size(), d);
  for (int i = 0; i < d; ++i) action.col(i) = algebra.generators()[i] * p;
  return make_subalgebra(algebra, nullspace(action));
}

Subalgebra normalizer_algebra(const LieAlgebraBasis& algebra, const Subalgebra& h, const Subalgebra& k) {
  if (containment_residual(algebra, h, k) > kSubalgebraTol)
    throw SubalgebraNotContained("isotropy algebra is not contained in the momentum isotropy algebra");
  const int d = algebra.dim();
  if (h.dim() == 0 || k.dim() == 0) return k;
  const Mat& gram = algebra.gram();
  Mat complement_proj = Mat::Identity(d, d) - h.basis * h.basis.transpose() * gram;
  Mat stacked(d * h.dim(), k.dim());
  for (int i = 0; i < h.dim(); ++i)
    stacked.middleRows(static_cast<Eigen::Index>(i) * d, d) =
        complement_proj * right_bracket_matrix(algebra, h.basis.col(i)) * k.basis;
  Mat coeffs = nullspace(stacked);
  return make_subalgebra(algebra, k.basis * coeffs);
}

bool compactness_certificate(const LieAlgebraBasis& algebra, const Mat& metric) {
  for (const auto& a : algebra.generators()) {
    double scale = std::max(1.0, max_abs(a) * max_abs(metric));
    if (max_abs(a.transpose() * metric + metric * a) > kSkewTol * scale) return false;
  }
  return true;
}

Mat group_exp(const LieAlgebraBasis& algebra, const AlgebraVector& xi, double t) {
  Mat a = t * algebra.matrix(xi);
  return a.exp();
}

}  // namespace slicecert
