#pragma once

// Iterative driver: per sample budget n, compute path length bounds,
// solve the bottleneck assignment on midpoint weights, derive allowable
// perturbation intervals and stop once the bound intervals fit inside
// them (certificate Q). Otherwise grow n by the factor alpha up to
// n_max.

#include <cstdint>
#include <optional>
#include <vector>

#include "certiplan/assignment.hpp"
#include "certiplan/bounds.hpp"
#include "certiplan/sampling.hpp"

namespace certiplan {

struct Scenario {
  Workspace workspace;
  std::vector<Point> agents;
  std::vector<Point> goals;
  double safety_distance = 0.3;
  bool roles_swapped = false;  // set by ingestion when goals outnumbered agents
};

struct DriverParams {
  std::size_t n_min = 1024;
  std::size_t n_max = 75000;
  double alpha = 4.0;
  double zeta = 0.1;
  double eta = 0.1;
  SamplingScheme scheme = SamplingScheme::triangular;
  std::optional<std::uint64_t> seed;
  bool euclid_floor = true;

  void validate() const;
};

// true iff alpha > (n_max / n_min)^(1 / n_max); below this the iteration
// count bound does not hold (warn, not error).
bool check_growth_condition(const DriverParams& params);

struct IterationRecord {
  std::size_t n_requested = 0;
  std::size_t n_actual = 0;
  BoundsMatrix bounds;
  bool assignment_valid = false;  // false when lower bounds were vacuous
  WeightMatrix weights;
  Assignment assignment;
  IntervalFamily intervals;
  bool certificate = false;
  bool direct_cert = false;
  double wall_time_seconds = 0.0;
};

struct CertificationReport {
  std::vector<IterationRecord> iterations;
  bool certified = false;
  Assignment final_assignment;
  double total_time_seconds = 0.0;
  bool growth_condition_ok = true;
};

CertificationReport run(const Scenario& scenario, const DriverParams& params);

}  // namespace certiplan
