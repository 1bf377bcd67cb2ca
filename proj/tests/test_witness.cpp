#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cocyclelab/errors.hpp"
#include "cocyclelab/witness.hpp"
#include "test_support.hpp"

using namespace cocyclelab;
using namespace cocyclelab::testing;

namespace {

SystemDescriptor rot(long p, long q) {
  return CircleRotation(rational_from(p, q));
}

// a single 40-cycle: finite but aperiodic far beyond the first few levels
SystemDescriptor long_cycle() {
  std::vector<std::size_t> map(40);
  for (std::size_t i = 0; i < 40; ++i) map[i] = (i + 1) % 40;
  return FinitePermutation(std::move(map));
}

}  // namespace

TEST_CASE("find_witness_point: canonical seeds and the existence gate") {
  auto [x, horizon] = find_witness_point(rot(2, 5), 1);
  CHECK(x == Point{CirclePoint(Rational(0))});
  CHECK(horizon == 2);

  // period 3 fails at level 1: the far point f^2(x) would land on a block
  CHECK_THROWS_AS(find_witness_point(rot(1, 3), 1), PeriodicAtHorizon);
  CHECK_THROWS_AS(find_witness_point(rot(1, 2), 1), PeriodicAtHorizon);
  CHECK_THROWS_AS(find_witness_point(
                      SystemDescriptor{FinitePermutation({1, 2, 0})}, 1),
                  PeriodicAtHorizon);

  // a long finite cycle supports the first few levels
  auto [fx, fh] = find_witness_point(long_cycle(), 2);
  CHECK(fx == Point{FinitePoint{0}});
  CHECK(fh == 6);
  CHECK_THROWS_AS(find_witness_point(long_cycle(), 5), PeriodicAtHorizon);

  // seed override
  auto [sx, sh] = find_witness_point(rot(2, 5), 1, CirclePoint(rational_from(1, 7)));
  CHECK(sx == Point{CirclePoint(rational_from(1, 7))});
  CHECK(sh == 2);
}

TEST_CASE("witness_radius: separation plus the far-lag cap") {
  CHECK(witness_radius(rot(2, 5), CirclePoint(Rational(0)), 1) ==
        rational_from(1, 10));

  // 3 * 67 = 201 = 2*100 + 1: the lag-3 return distance 1/100 caps the radius
  // far below the plain separation radius 33/200.
  SystemDescriptor tight = rot(67, 100);
  CHECK(separation_radius(tight, CirclePoint(Rational(0)), 2) ==
        rational_from(33, 200));
  CHECK(witness_radius(tight, CirclePoint(Rational(0)), 1) ==
        rational_from(1, 100));
}

TEST_CASE("witness profile: block layout, peak and far-point values") {
  SystemDescriptor sys = rot(2, 5);
  Point x0 = CirclePoint(Rational(0));
  Rational r = witness_radius(sys, x0, 1);
  Observable u = build_witness_profile(sys, x0, r, 1);

  const auto& pwl = std::get<PiecewiseLinearCircle>(u);
  REQUIRE(pwl.bumps.size() == 3);
  // blocks at f^-1(0)=3/5, 0, f(0)=2/5 with weights 1/2, 1, 1/2
  CHECK(pwl.bumps[0].center == rational_from(3, 5));
  CHECK(pwl.bumps[0].weight == rational_from(1, 2));
  CHECK(pwl.bumps[1].center == 0);
  CHECK(pwl.bumps[1].weight == 1);
  CHECK(pwl.bumps[2].center == rational_from(2, 5));
  CHECK(pwl.bumps[2].weight == rational_from(1, 2));

  CHECK(evaluate(sys, u, x0) == 1);
  CHECK(evaluate(sys, u, apply(sys, x0, 2)) == 0);
  CHECK(sup_norm(sys, u) == 1);

  CHECK_THROWS_AS(build_witness_profile(sys, x0, rational_from(1, 4), 1),
                  InvalidRadius);
}

TEST_CASE("witness identities survive the radius cap on adversarial rotations") {
  SystemDescriptor tight = rot(67, 100);
  WitnessReport report = witness_report(tight, WitnessParams{1, std::nullopt});
  CHECK(report.r_n == rational_from(1, 100));
  CHECK(report.sup_u == 1);
  CHECK(report.u_at_far_point == 0);
  CHECK(report.sup_phi == rational_from(1, 2));
  CHECK(report.quotient_lb == rational_from(1, 2));
  CHECK(report.support_disjoint);
  CHECK(report.expanded_matches_direct);
}

TEST_CASE("coboundary values on the central orbit all have modulus 2^-n") {
  for (std::int64_t n = 1; n <= 3; ++n) {
    SystemDescriptor sys = rot(2, 41);
    auto [x, horizon] = find_witness_point(sys, n);
    Rational r = witness_radius(sys, x, n);
    Observable u = build_witness_profile(sys, x, r, n);
    Observable phi = witness_coboundary_direct(sys, u);
    const std::int64_t two_n = std::int64_t{1} << n;
    const Rational expected = rational_from(1, two_n);
    CHECK(sup_norm(sys, phi) == expected);
    for (std::int64_t j = -two_n; j <= two_n - 1; ++j) {
      Rational v = evaluate(sys, phi, apply(sys, x, j));
      if (v < 0) v = -v;
      CHECK(v == expected);
    }
  }
}

TEST_CASE("expanded coboundary equals the direct one as a function") {
  Rng rng(103);
  for (std::int64_t n = 1; n <= 4; ++n) {
    for (long q : {41L, 610L}) {
      SystemDescriptor sys = rot(q == 610 ? 233 : 2, q);
      auto [x, horizon] = find_witness_point(sys, n);
      Rational r = witness_radius(sys, x, n);
      Observable direct =
          witness_coboundary_direct(sys, build_witness_profile(sys, x, r, n));
      Observable expanded = witness_coboundary_expanded(sys, x, r, n);
      CHECK(observables_equal(sys, direct, expanded));
      for (int s = 0; s < 50; ++s) {
        Point p = CirclePoint(random_coord(rng, 100000));
        CHECK(evaluate(sys, direct, p) == evaluate(sys, expanded, p));
      }
    }
  }

  // boundary blocks carry weight +-1/2^n at their centers
  SystemDescriptor sys = rot(2, 41);
  auto [x, horizon] = find_witness_point(sys, 2);
  Rational r = witness_radius(sys, x, 2);
  Observable expanded = witness_coboundary_expanded(sys, x, r, 2);
  CHECK(evaluate(sys, expanded, apply(sys, x, -4)) == rational_from(1, 4));
  CHECK(evaluate(sys, expanded, apply(sys, x, 3)) == rational_from(-1, 4));

  // the finite variant satisfies the same identity
  SystemDescriptor cyc = long_cycle();
  auto [fx, fh] = find_witness_point(cyc, 2);
  Rational fr = witness_radius(cyc, fx, 2);
  Observable fdirect =
      witness_coboundary_direct(cyc, build_witness_profile(cyc, fx, fr, 2));
  Observable fexpanded = witness_coboundary_expanded(cyc, fx, fr, 2);
  CHECK(observables_equal(cyc, fdirect, fexpanded));
}

TEST_CASE("witness_report: worked example on rotation 2/5") {
  WitnessReport report = witness_report(rot(2, 5), WitnessParams{1, std::nullopt});
  CHECK(report.n == 1);
  CHECK(report.x_n == Point{CirclePoint(Rational(0))});
  CHECK(report.r_n == rational_from(1, 10));
  CHECK(report.horizon_used == 2);
  CHECK(report.sup_u == 1);
  CHECK(report.u_at_far_point == 0);
  CHECK(report.sup_phi == rational_from(1, 2));
  CHECK(report.quotient_lb == rational_from(1, 2));
  CHECK(report.amplification == 1);
  CHECK(report.support_disjoint);
  CHECK(report.expanded_matches_direct);

  CHECK_THROWS_AS(witness_report(rot(1, 2), WitnessParams{1, std::nullopt}),
                  PeriodicAtHorizon);
}

TEST_CASE("witness levels work on finite systems with long cycles") {
  WitnessReport report = witness_report(long_cycle(), WitnessParams{2, std::nullopt});
  CHECK(report.sup_u == 1);
  CHECK(report.u_at_far_point == 0);
  CHECK(report.sup_phi == rational_from(1, 4));
  CHECK(report.quotient_lb == rational_from(1, 2));
  CHECK(report.amplification == 2);
  CHECK(report.support_disjoint);
  CHECK(report.expanded_matches_direct);
}

TEST_CASE("instability_sweep: geometric amplification growth") {
  SystemDescriptor sys = rot(233, 610);
  std::vector<WitnessReport> reports = instability_sweep(sys, 4);
  REQUIRE(reports.size() == 4);
  Rational previous(0);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& rep = reports[i];
    const std::int64_t n = static_cast<std::int64_t>(i) + 1;
    CHECK(rep.n == n);
    CHECK(rep.sup_phi == rational_from(1, std::int64_t{1} << n));
    CHECK(rep.quotient_lb >= rational_from(1, 2));
    CHECK(rep.amplification >= rational_from(std::int64_t{1} << (n - 1), 1));
    CHECK(rep.amplification > previous);
    previous = rep.amplification;
  }

  // identical output from the parallel path, merged in level order
  std::vector<WitnessReport> parallel = instability_sweep(sys, 4, true);
  REQUIRE(parallel.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(parallel[i].n == reports[i].n);
    CHECK(parallel[i].r_n == reports[i].r_n);
    CHECK(parallel[i].sup_phi == reports[i].sup_phi);
    CHECK(parallel[i].quotient_lb == reports[i].quotient_lb);
    CHECK(parallel[i].amplification == reports[i].amplification);
  }

  CHECK_THROWS_AS(instability_sweep(rot(2, 5), 2), PeriodicAtHorizon);
}

TEST_CASE("support disjointness is exact: pairwise center distances >= 2r") {
  SystemDescriptor sys = rot(233, 610);
  for (std::int64_t n = 1; n <= 5; ++n) {
    auto [x, horizon] = find_witness_point(sys, n);
    Rational r = witness_radius(sys, x, n);
    const std::int64_t two_n = std::int64_t{1} << n;
    OrbitSegment centers = orbit_segment(sys, x, -(two_n - 1), two_n - 1);
    for (std::size_t a = 0; a < centers.points.size(); ++a) {
      for (std::size_t b = a + 1; b < centers.points.size(); ++b) {
        CHECK(metric(sys, centers.points[a], centers.points[b]) >= 2 * r);
      }
    }
  }
}
