#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "random_systems.hpp"
#include "slicecert/errors.hpp"
#include "slicecert/symmetry.hpp"

using namespace slicecert;

namespace {

Mat example1_generator() {
  Mat a = Mat::Zero(4, 4);
  a(1, 0) = 1;
  a(0, 1) = -1;
  a(3, 2) = -1;
  a(2, 3) = 1;
  return a;
}

// Rotations of R^3 lifted diagonally to R^3 x R^3, coordinates interleaved.
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

double levi_civita(int i, int j, int k) {
  return 0.5 * (i - j) * (j - k) * (k - i);
}

AlgebraVector e(int d, int i) {
  return AlgebraVector(Vec::Unit(d, i));
}

Vec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

}  // namespace

TEST_CASE("infinitesimal action examples") {
  Mat omega = SymplecticSpace::canonical_omega(4);
  LieAlgebraBasis g(omega, {example1_generator()});
  Vec x = Vec::Unit(4, 0);
  CHECK((infinitesimal_action(g, e(1, 0), x) - Vec::Unit(4, 1)).norm() == 0.0);
  CHECK(infinitesimal_action(g, AlgebraVector::zero(1), Vec::Random(4)).norm() == 0.0);
  CHECK(infinitesimal_action(g, AlgebraVector(Vec::Constant(1, 2.3)), Vec::Zero(4)).norm() == 0.0);
}

TEST_CASE("structure constants") {
  SUBCASE("single generator") {
    auto c = derive_structure_constants({example1_generator()});
    CHECK(c.dim() == 1);
    CHECK(c.max_abs() == 0.0);
  }
  SUBCASE("so(3) gives the Levi-Civita tensor") {
    auto c = derive_structure_constants(so3_generators());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) CHECK(c(i, j, k) == doctest::Approx(levi_civita(i, j, k)));
  }
  SUBCASE("commuting diagonal generators") {
    Mat a = Vec((Vec(4) << 1, -1, 2, -2).finished()).asDiagonal();
    Mat b = Vec((Vec(4) << 0, 0, 1, -1).finished()).asDiagonal();
    CHECK(derive_structure_constants({a, b}).max_abs() == 0.0);
  }
  SUBCASE("non-closed set is rejected") {
    auto so3 = so3_generators();
    CHECK_THROWS_AS(derive_structure_constants({so3[0], so3[1]}), NotClosedUnderBracket);
  }
}

TEST_CASE("brackets") {
  Mat omega6 = SymplecticSpace::canonical_omega(6);
  LieAlgebraBasis so3(omega6, so3_generators());
  CHECK((bracket(so3, e(3, 0), e(3, 1)).coords - Vec::Unit(3, 2)).norm() < 1e-14);
  LieAlgebraBasis g(SymplecticSpace::canonical_omega(4), {example1_generator()});
  CHECK(bracket(g, AlgebraVector(Vec::Constant(1, 2.0)), AlgebraVector(Vec::Constant(1, -1.0))).coords.norm() == 0);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraVector x(random_vec(rng, 3)), y(random_vec(rng, 3)), z(random_vec(rng, 3));
    CHECK(bracket(so3, x, x).coords.norm() <= 1e-12);
    CHECK((bracket(so3, x, y).coords + bracket(so3, y, x).coords).norm() <= 1e-10);
    Vec jacobi = bracket(so3, x, bracket(so3, y, z)).coords + bracket(so3, y, bracket(so3, z, x)).coords +
                 bracket(so3, z, bracket(so3, x, y)).coords;
    CHECK(jacobi.norm() <= 1e-10);
    Mat commutator = so3.matrix(x) * so3.matrix(y) - so3.matrix(y) * so3.matrix(x);
    CHECK((so3.matrix(bracket(so3, x, y)) - commutator).norm() <= 1e-10);
  }
}

TEST_CASE("basis validation") {
  Mat omega = SymplecticSpace::canonical_omega(4);
  Mat sym = Mat::Identity(4, 4);
  CHECK_THROWS_AS(LieAlgebraBasis(omega, {sym}), ValidationError);
  CHECK_THROWS_AS(LieAlgebraBasis(omega, {example1_generator(), 2.0 * example1_generator()}), ValidationError);
  CHECK_THROWS_AS(LieAlgebraBasis(omega, {Mat::Zero(3, 3)}), ValidationError);
  StructureConstants wrong(1);
  wrong(0, 0, 0) = 1.0;
  CHECK_THROWS(LieAlgebraBasis(omega, {example1_generator()}, wrong));
}

TEST_CASE("generators are infinitesimally symplectic") {
  std::mt19937_64 rng(2);
  for (const auto& ts : testsys::random_systems(10, 99)) {
    const auto& space = ts.system.space();
    for (const auto& a : ts.system.algebra().generators())
      for (int s = 0; s < 10; ++s) {
        Vec u = random_vec(rng, space.dim()), v = random_vec(rng, space.dim());
        CHECK(std::abs(space.form(a * u, v) + space.form(u, a * v)) <= 1e-10 * (1 + a.norm()));
      }
  }
}

TEST_CASE("isotropy algebra") {
  Mat omega = SymplecticSpace::canonical_omega(4);
  LieAlgebraBasis g(omega, {example1_generator()});
  CHECK(isotropy_algebra(g, Vec::Zero(4)).dim() == 1);
  CHECK(isotropy_algebra(g, Vec::Unit(4, 0)).dim() == 0);
  LieAlgebraBasis trivial(omega, {});
  CHECK(isotropy_algebra(trivial, Vec::Random(4)).dim() == 0);

  LieAlgebraBasis so3(SymplecticSpace::canonical_omega(6), so3_generators());
  Vec parallel = (Vec(6) << 1, 2, 0, 0, 0, 0).finished();
  CHECK(isotropy_algebra(so3, parallel).dim() == 1);
  Vec generic = (Vec(6) << 1, 0, 0, 1, 0, 0).finished();
  CHECK(isotropy_algebra(so3, generic).dim() == 0);
}

TEST_CASE("isotropy annihilates the point and is conjugation invariant") {
  std::mt19937_64 rng(4);
  for (const auto& ts : testsys::random_systems(10, 17)) {
    const auto& g = ts.system.algebra();
    Subalgebra h = isotropy_algebra(g, ts.point);
    for (int i = 0; i < h.dim(); ++i)
      CHECK(infinitesimal_action(g, h.element(i), ts.point).norm() <= 1e-12 * (1 + ts.point.norm()) * 10);
    for (int s = 0; s < 3; ++s) {
      AlgebraVector eta(random_vec(rng, g.dim()));
      double t = std::uniform_real_distribution<double>(-2, 2)(rng);
      Vec moved = group_exp(g, eta, t) * ts.point;
      CHECK(isotropy_algebra(g, moved).dim() == h.dim());
    }
  }
}

TEST_CASE("normalizer") {
  Mat omega = SymplecticSpace::canonical_omega(4);
  LieAlgebraBasis g(omega, {example1_generator()});
  Subalgebra full = full_subalgebra(g);
  Subalgebra zero{Mat::Zero(1, 0)};
  CHECK(normalizer_algebra(g, zero, full).dim() == 1);
  CHECK(normalizer_algebra(g, full, full).dim() == 1);
  CHECK_THROWS_AS(normalizer_algebra(g, full, zero), SubalgebraNotContained);

  LieAlgebraBasis so3(SymplecticSpace::canonical_omega(6), so3_generators());
  Subalgebra all = full_subalgebra(so3);
  Subalgebra axis = make_subalgebra(so3, Vec::Unit(3, 2));
  CHECK(normalizer_algebra(so3, axis, all).dim() == 1);
  CHECK(normalizer_algebra(so3, axis, axis).dim() == 1);
  CHECK(normalizer_algebra(so3, Subalgebra{Mat::Zero(3, 0)}, all).dim() == 3);
}

TEST_CASE("compactness certificate") {
  Mat omega = SymplecticSpace::canonical_omega(4);
  CHECK(compactness_certificate(LieAlgebraBasis(omega, {example1_generator()}), Mat::Identity(4, 4)));
  Mat hyperbolic = Vec((Vec(4) << 1, -1, 1, -1).finished()).asDiagonal();
  CHECK_FALSE(compactness_certificate(LieAlgebraBasis(omega, {hyperbolic}), Mat::Identity(4, 4)));
  CHECK(compactness_certificate(LieAlgebraBasis(omega, {}), Mat::Identity(4, 4)));
  for (const auto& ts : testsys::random_systems(5, 8))
    CHECK(compactness_certificate(ts.system.algebra(), ts.system.space().metric()));
}

TEST_CASE("group exponential") {
  Mat omega = SymplecticSpace::canonical_omega(4);
  LieAlgebraBasis g(omega, {example1_generator()});
  CHECK((group_exp(g, AlgebraVector::zero(1), 1.0) - Mat::Identity(4, 4)).norm() == 0.0);
  Mat expected = Mat::Zero(4, 4);
  expected << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0;
  CHECK((group_exp(g, e(1, 0), std::numbers::pi / 2) - expected).norm() <= 1e-12);
  CHECK((group_exp(g, e(1, 0), 2 * std::numbers::pi) - Mat::Identity(4, 4)).norm() <= 1e-10);

  std::mt19937_64 rng(6);
  for (const auto& ts : testsys::random_systems(5, 21)) {
    const auto& alg = ts.system.algebra();
    const Mat& o = ts.system.space().omega();
    AlgebraVector xi(random_vec(rng, alg.dim()));
    Mat m = group_exp(alg, xi, 0.7);
    CHECK((m.transpose() * o * m - o).norm() <= 1e-9);
    Mat reference = oracle::taylor_exp(0.7 * alg.matrix(xi));
    CHECK((m - reference).norm() <= 1e-10 * (1 + reference.norm()));
  }
}
