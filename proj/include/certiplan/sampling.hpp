#pragma once

// Sample generators over the workspace box with certified dispersion
// bounds. The lattice schemes are deterministic; their reported bound
// D-hat is analytic and holds for every point of the box. Random
// sampling is supported but its bound is only probabilistic.

#include <cstdint>
#include <optional>
#include <vector>

#include "certiplan/geometry.hpp"

namespace certiplan {

enum class SamplingScheme { sukharev, triangular, random_uniform };

struct SampleSet {
  std::vector<Point> points;
  std::size_t requested_n = 0;
  std::size_t actual_n = 0;
  double dispersion_bound = 0.0;
  SamplingScheme scheme = SamplingScheme::sukharev;
  std::optional<std::uint64_t> seed;
  bool deterministic = true;
};

// Generate a sample set covering the workspace box. Lattice schemes may
// round n up to a tiling-feasible count; actual_n reports the result.
SampleSet generate(const Workspace& ws, SamplingScheme scheme, std::size_t n,
                   std::optional<std::uint64_t> seed = std::nullopt);

// The D-hat that generate() would report for this n, without
// materializing points. Strictly decreasing in n for lattice schemes.
double dispersion_bound(SamplingScheme scheme, const Workspace& ws,
                        std::size_t n);

// Test oracle: max over a fine evaluation grid of the min distance to
// the point set. The true dispersion lies in
// [max_min_distance, max_min_distance + slack].
struct EmpiricalDispersion {
  double max_min_distance = 0.0;
  double slack = 0.0;
};
EmpiricalDispersion empirical_dispersion(const Workspace& ws,
                                         const std::vector<Point>& points,
                                         double resolution);

}  // namespace certiplan
