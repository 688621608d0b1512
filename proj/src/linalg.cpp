#include "slicecert/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

namespace slicecert {

namespace {

std::atomic<double> g_rank_tolerance{1e-9};

}  // namespace

double rank_tolerance() { return g_rank_tolerance.load(std::memory_order_relaxed); }

void set_rank_tolerance(double tol) {
  g_rank_tolerance.store(tol, std::memory_order_relaxed);
}

bool load_rank_tolerance_from_env() {
  const char* raw = std::getenv("SLICECERT_TOL");
  if (raw == nullptr || *raw == '\0') return false;
  try {
    std::size_t used = 0;
    double tol = std::stod(raw, &used);
    if (used == 0 || !(tol > 0.0)) return false;
    set_rank_tolerance(tol);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

int numerical_rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  double cutoff = rank_tolerance() * std::max(1.0, s(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  return rank;
}

Mat nullspace(const Mat& m) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  double cutoff = rank_tolerance() * std::max(1.0, s(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Mat orthonormalize(const Mat& columns, const Mat& gram) {
  const Eigen::Index rows = columns.rows();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j)
    scale = std::max(scale, std::sqrt(std::max(0.0, columns.col(j).dot(gram * columns.col(j)))));
  double cutoff = rank_tolerance() * std::max(1.0, scale);

  Mat out(rows, columns.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vec v = columns.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < kept; ++k) v -= out.col(k).dot(gram * v) * out.col(k);
    }
    double norm = std::sqrt(std::max(0.0, v.dot(gram * v)));
    if (norm <= cutoff) continue;
    out.col(kept++) = v / norm;
  }
  return out.leftCols(kept);
}

Mat complement_within(const Mat& within, const Mat& against, const Mat& gram) {
  if (within.cols() == 0) return within;
  if (against.cols() == 0) return within;
  Mat coupling = against.transpose() * gram * within;
  Mat coeffs = nullspace(coupling);
  return orthonormalize(within * coeffs, gram);
}

double projection_residual(const Mat& v, const Mat& basis, const Mat& gram) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Vec r = v.col(j);
    if (basis.cols() > 0) r -= basis * (basis.transpose() * gram * r);
    worst = std::max(worst, std::sqrt(std::max(0.0, r.dot(gram * r))));
  }
  return worst;
}

Vec min_norm_solve(const Mat& a, const Vec& b) {
  if (a.cols() == 0) return Vec(0);
  if (a.rows() == 0) return Vec::Zero(a.cols());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  double cutoff = rank_tolerance() * std::max(1.0, s(0));
  Vec coeffs = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i) coeffs(i) = s(i) > cutoff ? coeffs(i) / s(i) : 0.0;
  return svd.matrixV() * coeffs;
}

Mat symmetrize(const Mat& a) { return 0.5 * (a + a.transpose()); }

double max_abs(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace slicecert
