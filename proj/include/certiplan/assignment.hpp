#pragma once

// Bottleneck assignment (threshold method over a bipartite matching
// feasibility test) and a sound family of allowable perturbation
// intervals, plus the certificate checks built on them.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace certiplan {

// Agents are rows, tasks are columns; callers ensure rows >= columns
// (scenario ingestion swaps roles otherwise). +infinity marks an
// absent edge.
struct WeightMatrix {
  std::size_t num_agents = 0;
  std::size_t num_tasks = 0;
  std::vector<double> entries;  // row-major

  WeightMatrix() = default;
  WeightMatrix(std::size_t agents, std::size_t tasks, double fill = 0.0)
      : num_agents(agents), num_tasks(tasks), entries(agents * tasks, fill) {}
  double& at(std::size_t i, std::size_t j) { return entries[i * num_tasks + j]; }
  double at(std::size_t i, std::size_t j) const {
    return entries[i * num_tasks + j];
  }
};

struct Assignment {
  std::vector<std::size_t> task_to_agent;  // per task, the matched agent
  double bottleneck_value = 0.0;

  bool assigns(std::size_t agent, std::size_t task) const {
    return task_to_agent[task] == agent;
  }
};

// Per-pair allowed weight range [w - lambda_down, w + lambda_up];
// both lambdas nonnegative, +infinity means unbounded on that side.
struct IntervalFamily {
  std::size_t num_agents = 0;
  std::size_t num_tasks = 0;
  std::vector<double> lambda_down;
  std::vector<double> lambda_up;

  std::size_t idx(std::size_t i, std::size_t j) const {
    return i * num_tasks + j;
  }
};

class AssignmentError : public std::runtime_error {
 public:
  explicit AssignmentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Threshold method: binary search over the sorted distinct finite
// weights for the smallest bottleneck admitting a task-saturating
// matching. Deterministic (augmenting paths scan in index order).
Assignment solve_bap(const WeightMatrix& w);

// True iff the boolean edge mask admits a task-saturating matching
// different from pi.
bool exists_alternative_matching(const std::vector<bool>& mask,
                                 std::size_t num_agents, std::size_t num_tasks,
                                 const Assignment& pi);

// Smallest t such that pi's edges plus off-pi edges of weight <= t admit
// an alternative matching; +infinity when none exists at any t.
double critical_threshold(const WeightMatrix& w, const Assignment& pi);

// Sound uniform-threshold interval family (conservative replacement for
// the lexicographic-maximal construction).
IntervalFamily allowable_intervals(const WeightMatrix& w, const Assignment& pi);

// Line-9 containment: for every pair, the half-width (u-l)/2 fits inside
// [-lambda_down, lambda_up]. Pairs with u = +infinity fail unless both
// lambdas are infinite.
bool certificate_check(const std::vector<double>& lower,
                       const std::vector<double>& upper, const WeightMatrix& w,
                       const IntervalFamily& lam);

// Cross-validation: true iff no alternative matching can avoid an off-pi
// pair whose lower bound already exceeds the worst assigned upper bound.
bool direct_certificate(const std::vector<double>& lower,
                        const std::vector<double>& upper, std::size_t num_agents,
                        std::size_t num_tasks, const Assignment& pi);

// Test oracle (instances up to 5 agents): corner enumeration over the
// interval box for every alternative matching.
bool brute_force_allowability(const WeightMatrix& w, const Assignment& pi,
                              const IntervalFamily& lam);

}  // namespace certiplan
