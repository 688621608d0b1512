#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "random_systems.hpp"
#include "slicecert/certify.hpp"
#include "slicecert/errors.hpp"

using namespace slicecert;

namespace {

AlgebraVector scalar(double v) {
  return AlgebraVector(Vec::Constant(1, v));
}

Vec random_vec(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

double lambda_min(const Mat& h) {
  return oracle::jacobi_eigenvalues(h)(0);
}

}  // namespace

TEST_CASE("velocities of the example") {
  auto origin = testsys::example1(Vec::Zero(4));
  VelocityFamily f = solve_velocities(origin.system, origin.point);
  CHECK(f.xi1.coords.norm() == 0.0);
  CHECK(f.dim() == 1);

  auto off = testsys::example1(Vec::Unit(4, 0));
  VelocityFamily g = solve_velocities(off.system, off.point);
  CHECK(g.dim() == 0);
  CHECK(std::abs(g.xi1.coords(0) - 2.0) <= 1e-9);

  CHECK_THROWS_AS(solve_velocities(off.system, (Vec(4) << 1, 0, 1, 0).finished()), NotRelativeEquilibrium);
}

TEST_CASE("zero Hamiltonian: every point is an equilibrium") {
  auto ts = testsys::example1(Vec::Zero(4));
  SymmetricSystem zero(ts.system.space(), ts.system.algebra(), Poly(4));
  VelocityFamily f = solve_velocities(zero, (Vec(4) << 0.3, 0.1, -2, 1).finished());
  CHECK(f.xi1.coords.norm() <= 1e-12);
  CHECK(f.dim() == 0);
}

TEST_CASE("restricted Hessian matches the hand computation") {
  auto ts = testsys::example1(Vec::Zero(4));
  WittArtinFrame frame = witt_artin(ts.system, ts.point);
  for (double xi : {0.0, 1.0, 2.5, 3.0, 4.0, 5.5}) {
    // The frame at the origin is the whole space; compare in coordinates.
    Mat h = frame.n * restricted_hessian(ts.system, ts.point, scalar(xi), frame) * frame.n.transpose();
    CHECK((h - oracle::example1_restricted_hessian_at_origin(xi)).norm() <= 1e-12);
  }
  Mat h0 = restricted_hessian(ts.system, ts.point, scalar(0.0), frame);
  CHECK(inertia(h0) == Inertia{2, 2, 0});

  auto off = testsys::example1(Vec::Unit(4, 0));
  WittArtinFrame g = witt_artin(off.system, off.point);
  Mat h = restricted_hessian(off.system, off.point, scalar(2.0), g);
  CHECK((h - Mat(-2.0 * Mat::Identity(2, 2))).norm() <= 1e-9);
  CHECK_THROWS_AS(restricted_hessian(off.system, off.point, scalar(1.0), g), PreconditionViolated);
}

TEST_CASE("search on the example") {
  auto ts = testsys::example1(Vec::Zero(4));
  VelocityFamily family = solve_velocities(ts.system, ts.point);
  WittArtinFrame frame = witt_artin(ts.system, ts.point);
  StabilityCertificate c = definiteness_search(ts.system, ts.point, family, frame);
  CHECK(c.verdict == Verdict::StableNegativeDefinite);
  CHECK(std::abs(c.xi_star.coords(0) - 3.0) <= 1e-6);
  CHECK(std::abs(c.margin - 1.0) <= 1e-6);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(c.spectrum(i) + 1.0) <= 1e-6);
  CHECK(c.compactness_verified);
  CHECK(c.inertia_at_xi1 == Inertia{2, 2, 0});

  auto off = testsys::example1(Vec::Unit(4, 0));
  StabilityCertificate d = definiteness_search(off.system, off.point, solve_velocities(off.system, off.point),
                                               witt_artin(off.system, off.point));
  CHECK(d.verdict == Verdict::StableNegativeDefinite);
  CHECK(std::abs(d.xi_star.coords(0) - 2.0) <= 1e-9);
  CHECK(std::abs(d.margin - 2.0) <= 1e-9);
}

TEST_CASE("indefinite with nothing to search") {
  SymplecticSpace space(2);
  Poly h(2);
  h.add_term({1, 1}, 1.0);
  SymmetricSystem saddle(space, LieAlgebraBasis(space.omega(), {}), h);
  Vec p = Vec::Zero(2);
  StabilityCertificate c = definiteness_search(saddle, p, solve_velocities(saddle, p), witt_artin(saddle, p));
  CHECK(c.verdict == Verdict::Inconclusive);
  CHECK(c.inertia_at_xi1 == Inertia{1, 1, 0});
}

TEST_CASE("orthogonal velocity") {
  auto ts = testsys::example1(Vec::Zero(4));
  VelocityFamily f = solve_velocities(ts.system, ts.point);
  f.xi1 = scalar(2.7);  // any member spans the same family
  for (double w : {0.5, 1.0, 9.0}) CHECK(orthogonal_velocity(f, Mat::Constant(1, 1, w)).coords.norm() <= 1e-14);

  auto off = testsys::example1(Vec::Unit(4, 0));
  VelocityFamily g = solve_velocities(off.system, off.point);
  CHECK((orthogonal_velocity(g, Mat::Identity(1, 1)).coords - g.xi1.coords).norm() == 0.0);
}

TEST_CASE("family, concavity and baseline domination on random systems") {
  std::mt19937_64 rng(23);
  for (const auto& ts : testsys::random_systems(10, 2024)) {
    CAPTURE(ts.label);
    const auto& sys = ts.system;
    VelocityFamily family = solve_velocities(sys, ts.point);
    WittArtinFrame frame = witt_artin(sys, ts.point);
    CHECK(sys.velocity_residual(ts.point, ts.velocity) <= 1e-9);
    const int m = family.dim();
    for (int s = 0; s < 10; ++s) {
      Vec a = random_vec(rng, m, 3.0), b = random_vec(rng, m, 3.0);
      CHECK(sys.velocity_residual(ts.point, family.member(a)) <= 1e-9);
      if (frame.slice_dim() == 0) continue;
      double mid = lambda_min(restricted_hessian(sys, ts.point, family.member(0.5 * (a + b)), frame));
      double ends = 0.5 * lambda_min(restricted_hessian(sys, ts.point, family.member(a), frame)) +
                    0.5 * lambda_min(restricted_hessian(sys, ts.point, family.member(b), frame));
      CHECK(mid >= ends - 1e-10 * (1 + std::abs(ends)));
    }

    AlgebraVector perp = orthogonal_velocity(family, sys.algebra_metric());
    Vec hp = family.directions.basis.transpose() * sys.algebra_metric() * perp.coords;
    CHECK(hp.norm() <= 1e-10 * (1 + perp.coords.norm()));
    StabilityCertificate search = definiteness_search(sys, ts.point, family, frame);
    StabilityCertificate baseline = certificate_at(sys, ts.point, perp, family, frame);
    if (baseline.stable()) {
      CHECK(search.stable());
      CHECK(search.margin >= baseline.margin - 1e-6 * (1 + baseline.margin));
    }
  }
}

TEST_CASE("verdict is constant along the momentum-isotropy orbit") {
  std::mt19937_64 rng(29);
  auto systems = testsys::random_systems(10, 555);
  systems.push_back(testsys::example1(Vec::Zero(4)));
  systems.push_back(testsys::example1(Vec::Unit(4, 0)));
  for (const auto& ts : systems) {
    CAPTURE(ts.label);
    const auto& sys = ts.system;
    StabilityCertificate a = definiteness_search(sys, ts.point, solve_velocities(sys, ts.point),
                                                 witt_artin(sys, ts.point));
    WittArtinFrame frame = witt_artin(sys, ts.point);
    for (int s = 0; s < 3; ++s) {
      Vec c = random_vec(rng, frame.momentum_isotropy.dim());
      AlgebraVector eta(frame.momentum_isotropy.basis * c);
      Vec moved = group_exp(sys.algebra(), eta, std::uniform_real_distribution<double>(-3, 3)(rng)) * ts.point;
      StabilityCertificate b =
          definiteness_search(sys, moved, solve_velocities(sys, moved), witt_artin(sys, moved));
      CAPTURE(a.best_positive_margin);
      CAPTURE(a.best_negative_margin);
      CAPTURE(b.best_positive_margin);
      CAPTURE(b.best_negative_margin);
      CAPTURE(a.xi_star.coords.transpose());
      CAPTURE(b.xi_star.coords.transpose());
      CHECK(a.verdict == b.verdict);
    }
  }
}

TEST_CASE("inertia counts") {
  Mat h = Vec((Vec(5) << 3, -1, 0, 1e-12, 2).finished()).asDiagonal();
  CHECK(inertia(h) == Inertia{2, 1, 2});
  CHECK(inertia(Mat(0, 0)) == Inertia{0, 0, 0});
}
