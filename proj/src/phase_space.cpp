#include "slicecert/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slicecert/errors.hpp"

namespace slicecert {

SymplecticSpace::SymplecticSpace(int dim) : SymplecticSpace(canonical_omega(dim), Mat::Identity(dim, dim)) {}

SymplecticSpace::SymplecticSpace(Mat omega, Mat metric) : omega_(std::move(omega)), metric_(std::move(metric)) {
  const Eigen::Index n = omega_.rows();
  if (n == 0 || n % 2 != 0 || omega_.cols() != n)
    throw ValidationError("omega must be a square matrix of even positive dimension");
  if (metric_.rows() != n || metric_.cols() != n)
    throw ValidationError("metric dimension does not match omega");
  double scale = std::max(1.0, max_abs(omega_));
  if (max_abs(omega_ + omega_.transpose()) > 1e-12 * scale)
    throw ValidationError("omega is not antisymmetric");
  Eigen::FullPivLU<Mat> lu(omega_);
  if (!lu.isInvertible() || std::abs(lu.determinant()) <= 1e-12)
    throw ValidationError("omega is not invertible");
  omega_inverse_ = lu.inverse();
  if (max_abs(metric_ - metric_.transpose()) > 1e-12 * std::max(1.0, max_abs(metric_)))
    throw ValidationError("metric is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> eig(metric_, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0))
    throw ValidationError("metric is not positive definite");
}

Mat SymplecticSpace::canonical_omega(int dim) {
  if (dim <= 0 || dim % 2 != 0) throw ValidationError("phase-space dimension must be even and positive");
  Mat omega = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; i += 2) {
    omega(i, i + 1) = -1.0;
    omega(i + 1, i) = 1.0;
  }
  return omega;
}

double SymplecticSpace::norm(const Vec& u) const { return std::sqrt(std::max(0.0, inner(u, u))); }

// ---------------------------------------------------------------------------

Poly Poly::constant(int num_vars, double value) {
  Poly p(num_vars);
  p.add_term(Exponents(num_vars, 0), value);
  return p;
}

Poly Poly::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw DimensionMismatch("variable index out of range");
  Poly p(num_vars);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, 1.0);
  return p;
}

Poly Poly::quadratic_form(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("quadratic form needs a square matrix");
  const int n = static_cast<int>(m.rows());
  Mat s = symmetrize(m);
  Poly p(n);
  for (int i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 2;
    p.add_term(e, 0.5 * s(i, i));
    for (int j = i + 1; j < n; ++j) {
      Exponents f(n, 0);
      f[i] = 1;
      f[j] = 1;
      p.add_term(f, s(i, j));
    }
  }
  return p;
}

int Poly::degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int k : e) d += k;
    deg = std::max(deg, d);
  }
  return deg;
}

void Poly::add_term(const Exponents& exponents, double coeff) {
  if (static_cast<int>(exponents.size()) != num_vars_)
    throw DimensionMismatch("monomial has " + std::to_string(exponents.size()) + " exponents, expected " +
                            std::to_string(num_vars_));
  for (int k : exponents)
    if (k < 0) throw DimensionMismatch("negative exponent in monomial");
  auto it = terms_.find(exponents);
  double value = (it == terms_.end() ? 0.0 : it->second) + coeff;
  if (std::abs(value) < kDropThreshold) {
    if (it != terms_.end()) terms_.erase(it);
    return;
  }
  if (it == terms_.end())
    terms_.emplace(exponents, value);
  else
    it->second = value;
}

double Poly::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? 0.0 : it->second;
}

void Poly::check_point(const Vec& x) const {
  if (x.size() != num_vars_)
    throw DimensionMismatch("point has length " + std::to_string(x.size()) + ", polynomial has " +
                            std::to_string(num_vars_) + " variables");
}

std::vector<std::vector<double>> Poly::power_table(const Vec& x) const {
  std::vector<int> max_exp(num_vars_, 0);
  for (const auto& [e, c] : terms_)
    for (int k = 0; k < num_vars_; ++k) max_exp[k] = std::max(max_exp[k], e[k]);
  std::vector<std::vector<double>> pw(num_vars_);
  for (int k = 0; k < num_vars_; ++k) {
    pw[k].resize(max_exp[k] + 1);
    pw[k][0] = 1.0;
    for (int j = 1; j <= max_exp[k]; ++j) pw[k][j] = pw[k][j - 1] * x(k);
  }
  return pw;
}

double Poly::eval(const Vec& x) const {
  check_point(x);
  auto pw = power_table(x);
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int k = 0; k < num_vars_; ++k) term *= pw[k][e[k]];
    sum += term;
  }
  return sum;
}

Vec Poly::gradient(const Vec& x) const {
  check_point(x);
  auto pw = power_table(x);
  Vec g = Vec::Zero(num_vars_);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      double term = c * e[i];
      for (int k = 0; k < num_vars_; ++k) term *= pw[k][k == i ? e[k] - 1 : e[k]];
      g(i) += term;
    }
  }
  return g;
}

Mat Poly::hessian(const Vec& x) const {
  check_point(x);
  auto pw = power_table(x);
  Mat h = Mat::Zero(num_vars_, num_vars_);
  std::vector<int> reduced(num_vars_);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      for (int j = i; j < num_vars_; ++j) {
        double factor = c;
        std::copy(e.begin(), e.end(), reduced.begin());
        factor *= reduced[i]--;
        if (reduced[j] == 0) continue;
        factor *= reduced[j]--;
        for (int k = 0; k < num_vars_; ++k) factor *= pw[k][reduced[k]];
        h(i, j) += factor;
      }
    }
  }
  for (int i = 0; i < num_vars_; ++i)
    for (int j = i + 1; j < num_vars_; ++j) h(j, i) = h(i, j);
  return h;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= num_vars_) throw DimensionMismatch("derivative variable out of range");
  Poly d(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    d.add_term(f, c * e[var]);
  }
  return d;
}

Poly Poly::compose_linear(const Mat& m) const {
  if (m.rows() != num_vars_ || m.cols() != num_vars_)
    throw DimensionMismatch("substitution matrix does not match polynomial variables");
  std::vector<Poly> rows;
  rows.reserve(num_vars_);
  for (int i = 0; i < num_vars_; ++i) {
    Poly r(num_vars_);
    for (int j = 0; j < num_vars_; ++j) {
      if (m(i, j) == 0.0) continue;
      Exponents e(num_vars_, 0);
      e[j] = 1;
      r.add_term(e, m(i, j));
    }
    rows.push_back(std::move(r));
  }
  // Cache powers of each substituted linear form.
  std::vector<std::vector<Poly>> pw(num_vars_);
  Poly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(num_vars_, c);
    for (int k = 0; k < num_vars_; ++k) {
      if (e[k] == 0) continue;
      auto& cache = pw[k];
      if (cache.empty()) cache.push_back(Poly::constant(num_vars_, 1.0));
      while (static_cast<int>(cache.size()) <= e[k]) cache.push_back(cache.back() * rows[k]);
      term = term * cache[e[k]];
    }
    out += term;
  }
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.num_vars_ != num_vars_) throw DimensionMismatch("adding polynomials in different variables");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.num_vars_ != num_vars_) throw DimensionMismatch("subtracting polynomials in different variables");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < kDropThreshold)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.num_vars_ != b.num_vars_) throw DimensionMismatch("multiplying polynomials in different variables");
  Poly out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int k = 0; k < a.num_vars_; ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

}  // namespace slicecert
