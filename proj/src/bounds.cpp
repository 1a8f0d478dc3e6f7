#include "certiplan/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace certiplan {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void BoundParams::validate() const {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("zeta must be in (0,1)");
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("eta must be in (0,1)");
  if (!(s > 0.0)) throw std::domain_error("safety distance must be positive");
}

double margin_schedule(double dhat, double zeta, double s) {
  return std::pow(3.0 * dhat, zeta) * std::pow(s, 1.0 - zeta);
}

double radius_schedule(double dhat, double eta, double delta) {
  return eta * 2.0 * dhat + (1.0 - eta) * (delta - dhat);
}

bool check_assumption_radius(double dhat, double delta, double r) {
  return 2.0 * dhat < r && r < delta - dhat;
}

namespace {

// All |A| x |T| queries are independent; run them in parallel into
// disjoint slots.
void query_all_pairs(const Roadmap& rm, std::size_t na, std::size_t ng,
                     std::vector<PathResult>& out) {
  out.resize(na * ng);
  const long total = static_cast<long>(na * ng);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < total; ++k) {
    std::size_t i = static_cast<std::size_t>(k) / ng;
    std::size_t j = static_cast<std::size_t>(k) % ng;
    out[static_cast<std::size_t>(k)] =
        shortest_path(rm, rm.start_index(i), rm.goal_index(j));
  }
}

}  // namespace

BoundsMatrix upper_bounds(const Workspace& ws, const std::vector<Point>& starts,
                          const std::vector<Point>& goals,
                          const BoundParams& params, const SampleSet& samples) {
  params.validate();
  BoundsMatrix bm;
  bm.num_agents = starts.size();
  bm.num_goals = goals.size();
  bm.dispersion_bound = samples.dispersion_bound;

  double dhat = samples.dispersion_bound;
  double r;
  if (3.0 * dhat < params.s) {
    double delta_u = margin_schedule(dhat, params.zeta, params.s);
    r = radius_schedule(dhat, params.eta, delta_u);
  } else {
    r = 4.0 * dhat;
  }
  bm.radius_upper = r;

  Roadmap rm = build(ws, starts, goals, params.s, r, samples);
  query_all_pairs(rm, bm.num_agents, bm.num_goals, bm.upper_paths);
  bm.upper.resize(bm.num_agents * bm.num_goals);
  for (std::size_t k = 0; k < bm.upper.size(); ++k)
    bm.upper[k] = bm.upper_paths[k].reachable ? bm.upper_paths[k].length : kInf;
  return bm;
}

void lower_bounds(const Workspace& ws, const std::vector<Point>& starts,
                  const std::vector<Point>& goals, const BoundParams& params,
                  const SampleSet& samples, BoundsMatrix& bm) {
  params.validate();
  const std::size_t na = starts.size(), ng = goals.size();
  bm.lower.assign(na * ng, -kInf);
  bm.lower_paths.assign(na * ng, PathResult{});
  double dhat = samples.dispersion_bound;

  auto euclid = [&](std::size_t i, std::size_t j) {
    return distance(starts[i], goals[j]);
  };

  if (dhat >= params.s / 3.0) {
    bm.lower_valid = false;
    bm.delta = 0.0;
    bm.radius_lower = 0.0;
    bm.beta = 0.0;
    if (params.euclid_floor) {
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < ng; ++j) bm.lower[bm.idx(i, j)] = euclid(i, j);
    }
    return;
  }

  double delta = margin_schedule(dhat, params.zeta, params.s);
  double r = radius_schedule(dhat, params.eta, delta);
  double beta = 1.0 - 2.0 * dhat / r;
  bm.delta = delta;
  bm.radius_lower = r;
  bm.beta = beta;
  bm.lower_valid = true;

  Roadmap rm = build(ws, starts, goals, params.s - delta, r, samples);
  query_all_pairs(rm, na, ng, bm.lower_paths);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      const PathResult& p = bm.lower_paths[bm.idx(i, j)];
      if (!p.reachable) {
        // No path at clearance 2*Dhat in the relaxed interior excludes
        // any s-clearance path, since s > s - delta + 2*Dhat.
        throw InfeasiblePairError(i, j);
      }
      double l = beta * p.length;
      if (params.euclid_floor) l = std::max(l, euclid(i, j));
      bm.lower[bm.idx(i, j)] = l;
    }
  }
}

BoundsMatrix compute_bounds(const Workspace& ws,
                            const std::vector<Point>& starts,
                            const std::vector<Point>& goals,
                            const BoundParams& params,
                            const SampleSet& samples) {
  BoundsMatrix bm = upper_bounds(ws, starts, goals, params, samples);
  lower_bounds(ws, starts, goals, params, samples, bm);
  return bm;
}

}  // namespace certiplan
