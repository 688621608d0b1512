#include <doctest.h>

#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "random_systems.hpp"
#include "slicecert/momentum.hpp"

using namespace slicecert;

namespace {

Mat rotation_generator() {
  Mat j(2, 2);
  j << 0, -1, 1, 0;
  return j;
}

Mat blockdiag(const Mat& a, const Mat& b) {
  Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

std::vector<Mat> so3_generators() {
  std::vector<Mat> out;
  for (int axis = 0; axis < 3; ++axis) {
    Mat l = Mat::Zero(3, 3);
    int a = (axis + 1) % 3, b = (axis + 2) % 3;
    l(b, a) = 1;
    l(a, b) = -1;
    out.push_back(Eigen::kroneckerProduct(l, Mat::Identity(2, 2)));
  }
  return out;
}

Vec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

}  // namespace

TEST_CASE("momentum components") {
  SymplecticSpace space(4);
  LieAlgebraBasis g(space.omega(), {blockdiag(rotation_generator(), -rotation_generator())});
  MomentumMap j(space, g);
  Poly expected(4);
  expected.add_term({2, 0, 0, 0}, 0.5);
  expected.add_term({0, 2, 0, 0}, 0.5);
  expected.add_term({0, 0, 2, 0}, -0.5);
  expected.add_term({0, 0, 0, 2}, -0.5);
  CHECK(j.component(0) == expected);

  LieAlgebraBasis diag(space.omega(), {blockdiag(rotation_generator(), rotation_generator())});
  Poly both(4);
  both.add_term({2, 0, 0, 0}, 0.5);
  both.add_term({0, 2, 0, 0}, 0.5);
  both.add_term({0, 0, 2, 0}, 0.5);
  both.add_term({0, 0, 0, 2}, 0.5);
  CHECK(MomentumMap(space, diag).component(0) == both);
}

TEST_CASE("momentum values") {
  SymplecticSpace space(4);
  LieAlgebraBasis g(space.omega(), {blockdiag(rotation_generator(), -rotation_generator())});
  MomentumMap j(space, g);
  CHECK(j(Vec::Zero(4)).coords(0) == 0.0);
  CHECK(j(Vec::Unit(4, 0)).coords(0) == doctest::Approx(0.5));
  MomentumMap none(space, LieAlgebraBasis(space.omega(), {}));
  CHECK(none(Vec::Random(4)).dim() == 0);
}

TEST_CASE("kernel of the differential") {
  SymplecticSpace space(4);
  LieAlgebraBasis g(space.omega(), {blockdiag(rotation_generator(), -rotation_generator())});
  MomentumMap j(space, g);
  CHECK(j.kernel_basis(Vec::Zero(4)).cols() == 4);
  Mat k = j.kernel_basis(Vec::Unit(4, 0));
  CHECK(k.cols() == 3);
  CHECK((j.differential(Vec::Unit(4, 0)) * k).norm() <= 1e-12);
  CHECK((k.transpose() * k - Mat::Identity(3, 3)).norm() <= 1e-12);
  MomentumMap none(space, LieAlgebraBasis(space.omega(), {}));
  CHECK(none.kernel_basis(Vec::Random(4)).cols() == 4);
}

TEST_CASE("differential condition dJ_i(p) v = omega(A_i p, v)") {
  std::mt19937_64 rng(12);
  for (const auto& ts : testsys::random_systems(10, 5)) {
    const auto& sys = ts.system;
    const int n = sys.dim();
    for (int s = 0; s < 50; ++s) {
      Vec p = random_vec(rng, n), v = random_vec(rng, n);
      for (int i = 0; i < sys.algebra_dim(); ++i) {
        double lhs = sys.momentum().component(i).gradient(p).dot(v);
        double rhs = sys.space().form(sys.algebra().generators()[i] * p, v);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("coadjoint action") {
  SymplecticSpace space(6);
  LieAlgebraBasis so3(space.omega(), so3_generators());
  MomentumValue mu2(Vec::Unit(3, 1));
  Vec r = ad_star(so3, AlgebraVector(Vec::Unit(3, 0)), mu2).coords;
  // <ad*_e1 e2*, e3> = -<e2*, [e1, e3]> = -<e2*, -e2> = 1
  CHECK((r - Vec::Unit(3, 2)).norm() <= 1e-14);
  CHECK(ad_star(so3, AlgebraVector(Vec::Random(3)), MomentumValue(Vec::Zero(3))).coords.norm() == 0.0);

  LieAlgebraBasis abelian(SymplecticSpace(4).omega(),
                          {blockdiag(rotation_generator(), -rotation_generator())});
  CHECK(ad_star(abelian, AlgebraVector(Vec::Constant(1, 3.0)), MomentumValue(Vec::Constant(1, 2.0))).coords.norm() ==
        0.0);

  std::mt19937_64 rng(8);
  for (int s = 0; s < 20; ++s) {
    Vec e1 = random_vec(rng, 3), e2 = random_vec(rng, 3);
    MomentumValue mu(random_vec(rng, 3));
    double a = random_vec(rng, 1)(0), b = random_vec(rng, 1)(0);
    Vec lhs = ad_star(so3, AlgebraVector(a * e1 + b * e2), mu).coords;
    Vec rhs = a * ad_star(so3, AlgebraVector(e1), mu).coords + b * ad_star(so3, AlgebraVector(e2), mu).coords;
    CHECK((lhs - rhs).norm() <= 1e-12 * (1 + lhs.norm()));
  }
}

TEST_CASE("momentum isotropy") {
  SymplecticSpace space(6);
  LieAlgebraBasis so3(space.omega(), so3_generators());
  CHECK(momentum_isotropy_algebra(so3, MomentumValue(Vec::Zero(3))).dim() == 3);
  Subalgebra k = momentum_isotropy_algebra(so3, MomentumValue(Vec::Unit(3, 2)));
  REQUIRE(k.dim() == 1);
  CHECK(std::abs(std::abs(k.basis(2, 0)) * std::sqrt(so3.gram()(2, 2)) - 1.0) <= 1e-12);
  LieAlgebraBasis abelian(SymplecticSpace(4).omega(), {blockdiag(rotation_generator(), -rotation_generator())});
  CHECK(momentum_isotropy_algebra(abelian, MomentumValue(Vec::Constant(1, 5.0))).dim() == 1);
}

TEST_CASE("equivariance") {
  SymplecticSpace space(4);
  LieAlgebraBasis g(space.omega(), {blockdiag(rotation_generator(), -rotation_generator())});
  MomentumMap j(space, g);
  std::mt19937_64 rng(10);
  for (int s = 0; s < 10; ++s) {
    Vec x = random_vec(rng, 4);
    double t = 3 * random_vec(rng, 1)(0);
    CHECK(equivariance_residual(j, g, x, AlgebraVector(Vec::Constant(1, 1.0)), t) <= 1e-10);
  }
  CHECK(equivariance_residual(j, g, Vec::Random(4), AlgebraVector(Vec::Constant(1, 1.0)), 0.0) == 0.0);
  CHECK(equivariance_residual(j, g, Vec::Random(4), AlgebraVector::zero(1), 1.0) == 0.0);

  for (const auto& ts : testsys::random_systems(10, 31)) {
    const auto& sys = ts.system;
    for (int s = 0; s < 5; ++s) {
      Vec x = random_vec(rng, sys.dim());
      AlgebraVector eta(random_vec(rng, sys.algebra_dim()));
      double scale = 1 + sys.momentum()(x).coords.norm();
      CHECK(equivariance_residual(sys.momentum(), sys.algebra(), x, eta, 0.8) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("momentum isotropy contains the point isotropy") {
  for (const auto& ts : testsys::random_systems(10, 41)) {
    const auto& g = ts.system.algebra();
    Subalgebra h = isotropy_algebra(g, ts.point);
    Subalgebra k = momentum_isotropy_algebra(g, ts.system.momentum()(ts.point));
    CHECK(h.dim() <= k.dim());
    CHECK(containment_residual(g, h, k) <= 1e-9);
  }
}
