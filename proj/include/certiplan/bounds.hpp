#pragma once

// Per-pair upper and lower bounds on the shortest s-clearance path
// lengths. Upper bounds come from feasible witness paths in the
// s-interior; lower bounds from a relaxed roadmap in the (s - delta)-
// interior scaled by beta = 1 - 2*Dhat/r.

#include <vector>

#include "certiplan/roadmap.hpp"

namespace certiplan {

struct BoundParams {
  double zeta = 0.1;          // margin tuning, in (0,1)
  double eta = 0.1;           // radius tuning, in (0,1)
  bool euclid_floor = true;   // lift lower bounds to straight-line distance
  double s = 0.3;             // safety distance, > 0

  void validate() const;
};

class InfeasiblePairError : public std::runtime_error {
 public:
  InfeasiblePairError(std::size_t agent, std::size_t goal)
      : std::runtime_error("no path exists for robot " + std::to_string(agent) +
                           " and goal " + std::to_string(goal) +
                           " at the required clearance"),
        agent(agent), goal(goal) {}
  std::size_t agent, goal;
};

struct BoundsMatrix {
  std::size_t num_agents = 0;
  std::size_t num_goals = 0;
  std::vector<double> lower;            // row-major agent x goal
  std::vector<double> upper;
  std::vector<PathResult> lower_paths;
  std::vector<PathResult> upper_paths;
  double delta = 0.0;
  double radius_lower = 0.0;
  double radius_upper = 0.0;
  double beta = 0.0;
  double dispersion_bound = 0.0;
  bool lower_valid = false;  // false when Dhat >= s/3 (vacuous lower bounds)

  std::size_t idx(std::size_t i, std::size_t j) const {
    return i * num_goals + j;
  }
  double& l(std::size_t i, std::size_t j) { return lower[idx(i, j)]; }
  double& u(std::size_t i, std::size_t j) { return upper[idx(i, j)]; }
  double l(std::size_t i, std::size_t j) const { return lower[idx(i, j)]; }
  double u(std::size_t i, std::size_t j) const { return upper[idx(i, j)]; }
};

// delta = (3*Dhat)^zeta * s^(1-zeta)
double margin_schedule(double dhat, double zeta, double s);
// r = eta*2*Dhat + (1-eta)*(delta - Dhat)
double radius_schedule(double dhat, double eta, double delta);
// true iff 2*Dhat < r < delta - Dhat (strict on both sides)
bool check_assumption_radius(double dhat, double delta, double r);

// Feasible witness paths in the s-interior; +infinity when unreachable.
BoundsMatrix upper_bounds(const Workspace& ws, const std::vector<Point>& starts,
                          const std::vector<Point>& goals,
                          const BoundParams& params, const SampleSet& samples);

// Lower bounds from the relaxed roadmap. Fills the lower/lower_paths/
// delta/radius_lower/beta fields of an upper_bounds result. Throws
// InfeasiblePairError when a pair is disconnected in the relaxed roadmap
// (which rules out any s-clearance path).
void lower_bounds(const Workspace& ws, const std::vector<Point>& starts,
                  const std::vector<Point>& goals, const BoundParams& params,
                  const SampleSet& samples, BoundsMatrix& bm);

// Convenience: both bounds from one sample set.
BoundsMatrix compute_bounds(const Workspace& ws,
                            const std::vector<Point>& starts,
                            const std::vector<Point>& goals,
                            const BoundParams& params,
                            const SampleSet& samples);

}  // namespace certiplan
