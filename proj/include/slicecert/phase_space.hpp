#pragma once

#include <map>
#include <vector>

#include "slicecert/linalg.hpp"

namespace slicecert {

/// Real symplectic vector space R^{2n} with omega(u, v) = u^T Omega v and a
/// reference inner product <u, v> = u^T metric v.
///
/// The default Omega is block diagonal with 2x2 blocks [[0, -1], [1, 0]] in
/// the coordinate order (x1, y1, x2, y2, ...). With this choice the quadratic
/// momentum map of the rotation generator [[0, -1], [1, 0]] is +(x^2 + y^2)/2.
class SymplecticSpace {
 public:
  /// Canonical Omega, identity metric.
  explicit SymplecticSpace(int dim);
  /// Throws ValidationError if Omega is not antisymmetric and invertible or
  /// the metric is not symmetric positive definite.
  SymplecticSpace(Mat omega, Mat metric);

  static Mat canonical_omega(int dim);

  int dim() const { return static_cast<int>(omega_.rows()); }
  const Mat& omega() const { return omega_; }
  const Mat& omega_inverse() const { return omega_inverse_; }
  const Mat& metric() const { return metric_; }

  double form(const Vec& u, const Vec& v) const { return u.dot(omega_ * v); }
  double inner(const Vec& u, const Vec& v) const { return u.dot(metric_ * v); }
  double norm(const Vec& u) const;

 private:
  Mat omega_;
  Mat omega_inverse_;
  Mat metric_;
};

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over a fixed number of variables.
/// Coefficients with |c| < 1e-300 are never stored.
class Poly {
 public:
  static constexpr double kDropThreshold = 1e-300;

  explicit Poly(int num_vars = 0) : num_vars_(num_vars) {}

  static Poly constant(int num_vars, double value);
  static Poly variable(int num_vars, int index);
  /// (1/2) x^T m x for symmetric m.
  static Poly quadratic_form(const Mat& m);

  int num_vars() const { return num_vars_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  /// Adds `coeff` to the coefficient of the monomial with these exponents.
  void add_term(const Exponents& exponents, double coeff);
  double coefficient(const Exponents& exponents) const;

  double eval(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  Poly derivative(int var) const;

  /// Substitution x -> m x, i.e. returns the polynomial x |-> f(m x).
  Poly compose_linear(const Mat& m) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(double s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  void check_point(const Vec& x) const;
  std::vector<std::vector<double>> power_table(const Vec& x) const;

  int num_vars_;
  std::map<Exponents, double> terms_;
};

}  // namespace slicecert
