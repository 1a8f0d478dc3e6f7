#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "certiplan/assignment.hpp"
#include "testkit.hpp"

using namespace certiplan;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

WeightMatrix make(std::size_t na, std::size_t nt, std::vector<double> vals) {
  WeightMatrix w(na, nt);
  w.entries = std::move(vals);
  return w;
}

std::vector<bool> full_mask(std::size_t na, std::size_t nt) {
  return std::vector<bool>(na * nt, true);
}

WeightMatrix random_weights(std::mt19937_64& rng, std::size_t na, std::size_t nt,
                            bool inject_special) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  WeightMatrix w(na, nt);
  for (double& v : w.entries) v = u(rng);
  if (inject_special) {
    // Ties and absent edges.
    if (rng() % 2) w.entries[rng() % w.entries.size()] = w.entries[0];
    if (rng() % 3 == 0) w.entries[rng() % w.entries.size()] = kInf;
  }
  return w;
}

}  // namespace

TEST_CASE("solve_bap examples") {
  Assignment a = solve_bap(make(2, 2, {3, 1, 2, 4}));
  CHECK(a.bottleneck_value == 2);
  CHECK(a.task_to_agent == std::vector<std::size_t>{1, 0});

  Assignment b = solve_bap(make(1, 1, {5}));
  CHECK(b.bottleneck_value == 5);
  CHECK(b.task_to_agent == std::vector<std::size_t>{0});

  Assignment c = solve_bap(make(3, 2, {1, 9, 9, 1, 9, 9}));
  CHECK(c.bottleneck_value == 1);
  CHECK(c.task_to_agent == std::vector<std::size_t>{0, 1});

  CHECK_THROWS_AS(solve_bap(make(2, 2, {kInf, kInf, kInf, kInf})),
                  AssignmentError);
}

TEST_CASE("exists_alternative_matching examples") {
  Assignment diag;
  diag.task_to_agent = {0, 1};
  CHECK(exists_alternative_matching(full_mask(2, 2), 2, 2, diag));

  std::vector<bool> only_pi = {true, false, false, true};
  CHECK_FALSE(exists_alternative_matching(only_pi, 2, 2, diag));

  // 3 agents / 2 tasks, pi = {(0,t0),(1,t1)}, extra edge (2,t0): the idle
  // agent can take task 0.
  std::vector<bool> mask = {true, false, false, true, true, false};
  CHECK(exists_alternative_matching(mask, 3, 2, diag));
}

TEST_CASE("critical_threshold examples") {
  {
    WeightMatrix w = make(2, 2, {3, 1, 2, 4});
    Assignment pi = solve_bap(w);
    CHECK(critical_threshold(w, pi) == 4);
  }
  {
    WeightMatrix w = make(1, 1, {5});
    Assignment pi = solve_bap(w);
    CHECK(std::isinf(critical_threshold(w, pi)));
  }
  {
    WeightMatrix w = make(3, 3, {5, 1, 9, 1, 5, 9, 9, 9, 5});
    Assignment pi;
    pi.task_to_agent = {0, 1, 2};
    pi.bottleneck_value = 5;
    CHECK(critical_threshold(w, pi) == 1);
  }
}

TEST_CASE("allowable_intervals examples") {
  {
    WeightMatrix w = make(2, 2, {3, 1, 2, 4});
    Assignment pi = solve_bap(w);  // {(0,t1),(1,t0)}, b* = 2, T = 4
    IntervalFamily lam = allowable_intervals(w, pi);
    // Assigned pairs: capped at theta = (b* + T)/2 = 3.
    CHECK(std::isinf(lam.lambda_down[lam.idx(0, 1)]));
    CHECK(lam.lambda_up[lam.idx(0, 1)] == doctest::Approx(2.0));
    CHECK(lam.lambda_up[lam.idx(1, 0)] == doctest::Approx(1.0));
    // Unassigned (1,1) with w = 4 >= T: floored at theta, [3, inf).
    CHECK(lam.lambda_down[lam.idx(1, 1)] == doctest::Approx(1.0));
    CHECK(std::isinf(lam.lambda_up[lam.idx(1, 1)]));
    // Unassigned (0,0) with w = 3 < 4: unconstrained.
    CHECK(std::isinf(lam.lambda_down[lam.idx(0, 0)]));
    CHECK(std::isinf(lam.lambda_up[lam.idx(0, 0)]));
    CHECK(brute_force_allowability(w, pi, lam));
  }
  {
    WeightMatrix w = make(1, 1, {5});
    Assignment pi = solve_bap(w);
    IntervalFamily lam = allowable_intervals(w, pi);
    CHECK(std::isinf(lam.lambda_down[0]));
    CHECK(std::isinf(lam.lambda_up[0]));
  }
  {
    // T = 1 < b* = 5: diagonal frozen, cheap off-diagonals free, big ones
    // floored at b*.
    WeightMatrix w = make(3, 3, {5, 1, 9, 1, 5, 9, 9, 9, 5});
    Assignment pi;
    pi.task_to_agent = {0, 1, 2};
    pi.bottleneck_value = 5;
    IntervalFamily lam = allowable_intervals(w, pi);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(lam.lambda_down[lam.idx(j, j)] == 0.0);
      CHECK(lam.lambda_up[lam.idx(j, j)] == 0.0);
    }
    CHECK(std::isinf(lam.lambda_down[lam.idx(0, 1)]));
    CHECK(std::isinf(lam.lambda_up[lam.idx(0, 1)]));
    CHECK(lam.lambda_down[lam.idx(0, 2)] == doctest::Approx(4.0));
    CHECK(std::isinf(lam.lambda_up[lam.idx(0, 2)]));
    CHECK(brute_force_allowability(w, pi, lam));
  }
  {
    WeightMatrix w = make(2, 2, {3, 1, 2, 4});
    Assignment bad;
    bad.task_to_agent = {0, 1};  // bottleneck 7? no: (0,t0)=3,(1,t1)=4 -> 4 > 2
    bad.bottleneck_value = 4;
    CHECK_THROWS_AS(allowable_intervals(w, bad), AssignmentError);
  }
}

TEST_CASE("certificate_check examples") {
  WeightMatrix w = make(1, 1, {5});
  Assignment pi = solve_bap(w);
  IntervalFamily lam = allowable_intervals(w, pi);
  CHECK(certificate_check({5}, {5}, w, lam));  // l = u always certifies

  IntervalFamily tight;
  tight.num_agents = tight.num_tasks = 1;
  tight.lambda_down = {kInf};
  tight.lambda_up = {0.9};
  CHECK_FALSE(certificate_check({4}, {6}, w, tight));  // half-width 1 > 0.9

  tight.lambda_up = {1.0};
  CHECK(certificate_check({4}, {6}, w, tight));

  // Infinite upper bound can only pass with fully unconstrained lambdas.
  IntervalFamily freefam;
  freefam.num_agents = freefam.num_tasks = 1;
  freefam.lambda_down = {kInf};
  freefam.lambda_up = {kInf};
  CHECK(certificate_check({4}, {kInf}, w, freefam));
  CHECK_FALSE(certificate_check({4}, {kInf}, w, tight));
}

TEST_CASE("direct_certificate examples") {
  Assignment pi;
  pi.task_to_agent = {1, 0};  // from W = [[3,1],[2,4]] midpoints
  // Bottleneck upper bound 2.0; both off-pi lower bounds >= 2.0.
  CHECK(direct_certificate({2.5, 1.0, 2.0, 3.5}, {3.0, 1.2, 2.0, 4.0}, 2, 2, pi));
  // Off-pi pair cheaper than the worst assigned upper bound: no claim.
  CHECK_FALSE(direct_certificate({1.0, 1.0, 2.0, 1.0}, {3.0, 1.2, 2.0, 4.0}, 2,
                                 2, pi));
}

TEST_CASE("solve_bap agrees with brute force on random instances") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t nt = 1 + rng() % 5;
    std::size_t na = nt + rng() % (6 - nt);
    WeightMatrix w = random_weights(rng, na, nt, true);
    auto brute = testkit::brute_force_bap(w);
    if (!std::isfinite(brute.value)) {
      CHECK_THROWS_AS(solve_bap(w), AssignmentError);
      continue;
    }
    Assignment got = solve_bap(w);
    CHECK(got.bottleneck_value == brute.value);
    double attained = -kInf;
    for (std::size_t j = 0; j < nt; ++j)
      attained = std::max(attained, w.at(got.task_to_agent[j], j));
    CHECK(attained == brute.value);
  }
}

TEST_CASE("allowable_intervals sound on random instances") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t nt = 1 + rng() % 4;
    std::size_t na = nt + rng() % (5 - nt);
    WeightMatrix w = random_weights(rng, na, nt, true);
    Assignment pi;
    try {
      pi = solve_bap(w);
    } catch (const AssignmentError&) {
      continue;
    }
    IntervalFamily lam = allowable_intervals(w, pi);
    CHECK(brute_force_allowability(w, pi, lam));
    // Structural shape of this construction.
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nt; ++j) {
        std::size_t k = lam.idx(i, j);
        CHECK(lam.lambda_down[k] >= 0.0);
        CHECK(lam.lambda_up[k] >= 0.0);
        if (pi.assigns(i, j))
          CHECK((std::isinf(lam.lambda_down[k]) || lam.lambda_down[k] == 0.0));
        else if (std::isinf(w.at(i, j)))
          CHECK(lam.lambda_up[k] == 0.0);  // absent edges are pinned
        else
          CHECK(std::isinf(lam.lambda_up[k]));
      }
    }
  }
}

TEST_CASE("widened interval family is caught by the oracle") {
  WeightMatrix w = make(2, 2, {3, 1, 2, 4});
  Assignment pi = solve_bap(w);
  IntervalFamily lam = allowable_intervals(w, pi);
  // Push an assigned cap past the critical threshold.
  lam.lambda_up[lam.idx(0, 1)] += 1e-6;
  CHECK_FALSE(brute_force_allowability(w, pi, lam));
}

TEST_CASE("scaling weights leaves the matching unchanged") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    WeightMatrix w = random_weights(rng, 4, 3, false);
    double gamma = 0.25 + (rng() % 100) / 10.0;
    WeightMatrix ws = w;
    for (double& v : ws.entries) v *= gamma;
    Assignment a = solve_bap(w);
    Assignment b = solve_bap(ws);
    CHECK(a.task_to_agent == b.task_to_agent);
    CHECK(b.bottleneck_value == doctest::Approx(gamma * a.bottleneck_value));
  }
}

TEST_CASE("certified instances stay optimal for every weight draw") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int certified = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t nt = 1 + rng() % 3;
    std::size_t na = nt + rng() % (4 - nt);
    // Random true weights, then noisy bounds around them.
    WeightMatrix truth = random_weights(rng, na, nt, false);
    std::vector<double> lower(truth.entries.size()), upper(truth.entries.size());
    WeightMatrix mid(na, nt);
    double noise = 0.02 + 1.5 * u(rng);
    for (std::size_t k = 0; k < truth.entries.size(); ++k) {
      double e1 = noise * u(rng), e2 = noise * u(rng);
      lower[k] = truth.entries[k] - e1;
      upper[k] = truth.entries[k] + e2;
      mid.entries[k] = 0.5 * (lower[k] + upper[k]);
    }
    Assignment pi = solve_bap(mid);
    IntervalFamily lam = allowable_intervals(mid, pi);
    if (!certificate_check(lower, upper, mid, lam)) continue;
    ++certified;
    // Corners and random draws from [L, U] must keep pi optimal.
    for (int draw = 0; draw < 50; ++draw) {
      WeightMatrix sample(na, nt);
      for (std::size_t k = 0; k < sample.entries.size(); ++k)
        sample.entries[k] = lower[k] + (upper[k] - lower[k]) * u(rng);
      auto brute = testkit::brute_force_bap(sample);
      double pib = -kInf;
      for (std::size_t j = 0; j < nt; ++j)
        pib = std::max(pib, sample.at(pi.task_to_agent[j], j));
      CHECK(pib == brute.value);
    }
    std::size_t corners = std::size_t{1} << std::min<std::size_t>(
                              truth.entries.size(), 12);
    for (std::size_t c = 0; c < corners; ++c) {
      WeightMatrix corner(na, nt);
      for (std::size_t k = 0; k < corner.entries.size(); ++k)
        corner.entries[k] = ((c >> (k % 12)) & 1) ? upper[k] : lower[k];
      auto brute = testkit::brute_force_bap(corner);
      double pib = -kInf;
      for (std::size_t j = 0; j < nt; ++j)
        pib = std::max(pib, corner.at(pi.task_to_agent[j], j));
      CHECK(pib == brute.value);
    }
  }
  CHECK(certified > 5);  // the property must actually trigger
}
