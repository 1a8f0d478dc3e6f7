#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "certiplan/bounds.hpp"
#include "testkit.hpp"

using namespace certiplan;

TEST_CASE("parameter schedule reproduces the reference chain") {
  struct Row {
    double dhat, delta, r, beta;
  };
  // delta/r to +-0.001/0.002, beta to +-0.01 (inputs are rounded).
  const Row rows[] = {{0.071, 0.290, 0.211, 0.332},
                      {0.035, 0.270, 0.219, 0.677},
                      {0.018, 0.252, 0.215, 0.835}};
  for (const Row& row : rows) {
    double delta = margin_schedule(row.dhat, 0.1, 0.3);
    double r = radius_schedule(row.dhat, 0.1, delta);
    double beta = 1.0 - 2.0 * row.dhat / r;
    CHECK(delta == doctest::Approx(row.delta).epsilon(0).scale(0).epsilon(0.004));
    CHECK(std::abs(delta - row.delta) <= 0.001);
    CHECK(std::abs(r - row.r) <= 0.002);
    CHECK(std::abs(beta - row.beta) <= 0.01);
    CHECK(check_assumption_radius(row.dhat, delta, r));
  }
}

TEST_CASE("parameter identities exact to 1e-12") {
  double dhat = 0.0421, zeta = 0.37, eta = 0.22, s = 0.5;
  double delta = margin_schedule(dhat, zeta, s);
  double r = radius_schedule(dhat, eta, delta);
  CHECK(std::abs(delta - std::pow(3 * dhat, zeta) * std::pow(s, 1 - zeta)) < 1e-12);
  CHECK(std::abs(r - (eta * 2 * dhat + (1 - eta) * (delta - dhat))) < 1e-12);
  CHECK(std::abs((1.0 - 2.0 * dhat / r) - (r - 2 * dhat) / r) < 1e-12);
}

TEST_CASE("assumption radius window") {
  CHECK(check_assumption_radius(0.071, 0.290, 0.211));  // 0.142 < 0.211 < 0.219
  CHECK_FALSE(check_assumption_radius(0.1, 0.5, 0.2));  // r = 2*Dhat, strict
  // delta = 3*Dhat leaves an empty window.
  CHECK_FALSE(check_assumption_radius(0.1, 0.3, 0.2));
  CHECK_FALSE(check_assumption_radius(0.1, 0.3, 0.21));
}

TEST_CASE("obstacle-free bounds collapse onto the straight line") {
  Workspace ws({0, 0}, {2, 1});
  std::vector<Point> starts = {{0.3, 0.5}};
  std::vector<Point> goals = {{1.3, 0.5}};
  BoundParams params;
  params.s = 0.3;  // vacuous without obstacles
  double prev_u = std::numeric_limits<double>::infinity();
  for (std::size_t n : {256, 1024, 4096}) {
    SampleSet samples = generate(ws, SamplingScheme::triangular, n);
    BoundsMatrix bm = compute_bounds(ws, starts, goals, params, samples);
    CHECK(bm.u(0, 0) >= 1.0 - 1e-12);  // never below the optimum
    CHECK(bm.u(0, 0) <= prev_u + 1e-9);
    prev_u = bm.u(0, 0);
    if (bm.lower_valid) {
      CHECK(bm.l(0, 0) == doctest::Approx(1.0));  // euclid floor is exact here
      CHECK(bm.l(0, 0) <= bm.u(0, 0));
      CHECK(bm.beta < 1.0);
      CHECK(check_assumption_radius(bm.dispersion_bound, bm.delta, bm.radius_lower));
    }
  }
  CHECK(prev_u < 1.03);
}

TEST_CASE("strict mode returns vacuous lower bounds when Dhat >= s/3") {
  Workspace ws({0, 0}, {1, 1});
  BoundParams params;
  params.s = 0.3;
  params.euclid_floor = false;
  SampleSet samples = generate(ws, SamplingScheme::triangular, 16);  // coarse
  REQUIRE(samples.dispersion_bound >= 0.1);
  BoundsMatrix bm = compute_bounds(ws, {{0.2, 0.5}}, {{0.8, 0.5}}, params, samples);
  CHECK_FALSE(bm.lower_valid);
  CHECK(std::isinf(bm.l(0, 0)));
  CHECK(bm.l(0, 0) < 0);

  params.euclid_floor = true;
  BoundsMatrix bf = compute_bounds(ws, {{0.2, 0.5}}, {{0.8, 0.5}}, params, samples);
  CHECK(bf.l(0, 0) == doctest::Approx(0.6));
}

TEST_CASE("corridor narrower than 2s gives infinite upper bounds") {
  // Two blocks leaving a 0.4 gap; s = 0.3 requires width 0.6.
  Polygon left({{0.0, 1.0}, {1.8, 1.0}, {1.8, 1.4}, {0.0, 1.4}});
  Polygon right({{2.2, 1.0}, {4.0, 1.0}, {4.0, 1.4}, {2.2, 1.4}});
  Workspace ws({0, 0}, {4, 2.4}, {left, right}, true);
  BoundParams params;
  params.s = 0.3;
  SampleSet samples = generate(ws, SamplingScheme::triangular, 2048);
  BoundsMatrix bm = upper_bounds(ws, {{2.0, 0.5}}, {{2.0, 1.9}}, params, samples);
  CHECK(std::isinf(bm.u(0, 0)));
}

TEST_CASE("detour around a corner checked against the grid oracle") {
  Polygon block({{1.2, 0.0}, {1.8, 0.0}, {1.8, 1.6}, {1.2, 1.6}});
  Workspace ws({0, 0}, {3, 2.4}, {block});
  BoundParams params;
  params.s = 0.2;
  Point a{0.5, 0.4}, b{2.5, 0.4};
  SampleSet samples = generate(ws, SamplingScheme::triangular, 16384);
  BoundsMatrix bm = compute_bounds(ws, {a}, {b}, params, samples);
  REQUIRE(bm.lower_valid);
  REQUIRE(std::isfinite(bm.u(0, 0)));
  auto est = testkit::grid_shortest_path(ws, params.s, a, b, {0.02, 8});
  REQUIRE(std::isfinite(est.length));
  CHECK(bm.l(0, 0) <= est.length + 1e-9);
  CHECK(bm.u(0, 0) >= (est.length - est.slack) / est.distortion - 1e-9);
  // Taut string around the inflated corner: within a few percent.
  CHECK(bm.u(0, 0) <= est.length * 1.03 + est.slack);
  CHECK(bm.l(0, 0) <= bm.u(0, 0));
  // Witness feasibility at margin s.
  const PathResult& wp = bm.upper_paths[0];
  for (std::size_t k = 0; k + 1 < wp.waypoints.size(); ++k)
    CHECK(uninterrupted_edge(ws, wp.waypoints[k], wp.waypoints[k + 1], params.s));
}

TEST_CASE("infeasible pair in the relaxed roadmap raises the named error") {
  Polygon wall({{1.9, 0.0}, {2.1, 0.0}, {2.1, 3.0}, {1.9, 3.0}});
  Workspace ws({0, 0}, {4, 3}, {wall}, true);
  BoundParams params;
  params.s = 0.3;
  SampleSet samples = generate(ws, SamplingScheme::triangular, 4096);
  CHECK_THROWS_AS(compute_bounds(ws, {{0.8, 1.5}}, {{3.2, 1.5}}, params, samples),
                  InfeasiblePairError);
}
