#include "certiplan/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

namespace certiplan {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Nearest-neighbor spacing of a triangular lattice holding n points per
// box area; covering radius (circumradius of the tile) is a / sqrt(3).
double triangular_spacing(const Workspace& ws, std::size_t n) {
  double area = ws.width() * ws.height();
  return std::sqrt(2.0 * area / (kSqrt3 * static_cast<double>(n)));
}

struct GridCounts {
  std::size_t kx, ky;
};

GridCounts sukharev_counts(const Workspace& ws, std::size_t n) {
  double lx = ws.width(), ly = ws.height();
  double h = std::sqrt(lx * ly / static_cast<double>(n));
  auto up = [](double v) {
    return static_cast<std::size_t>(std::max(1.0, std::ceil(v - 1e-9)));
  };
  std::size_t kx = up(lx / h);
  std::size_t ky = up(ly / h);
  while (kx * ky < n) {
    // Grow the dimension with the larger cell side first.
    if (lx / static_cast<double>(kx) >= ly / static_cast<double>(ky))
      ++kx;
    else
      ++ky;
  }
  return {kx, ky};
}

SampleSet generate_sukharev(const Workspace& ws, std::size_t n) {
  auto [kx, ky] = sukharev_counts(ws, n);
  double cx = ws.width() / static_cast<double>(kx);
  double cy = ws.height() / static_cast<double>(ky);
  SampleSet out;
  out.scheme = SamplingScheme::sukharev;
  out.requested_n = n;
  out.points.reserve(kx * ky);
  for (std::size_t j = 0; j < ky; ++j) {
    for (std::size_t i = 0; i < kx; ++i) {
      out.points.push_back({ws.bbox_min.x + (static_cast<double>(i) + 0.5) * cx,
                            ws.bbox_min.y + (static_cast<double>(j) + 0.5) * cy});
    }
  }
  out.actual_n = out.points.size();
  out.dispersion_bound = 0.5 * std::hypot(cx, cy);
  return out;
}

std::vector<Point> triangular_lattice(const Workspace& ws, double a) {
  double dy = a * kSqrt3 / 2.0;
  std::vector<Point> pts;
  long jmax = static_cast<long>(std::ceil(ws.height() / dy)) + 1;
  for (long j = -1; j <= jmax; ++j) {
    double y = ws.bbox_min.y + static_cast<double>(j) * dy;
    double xoff = (j % 2 != 0) ? 0.5 * a : 0.0;
    long imax = static_cast<long>(std::ceil(ws.width() / a)) + 1;
    for (long i = -1; i <= imax; ++i) {
      double x = ws.bbox_min.x + xoff + static_cast<double>(i) * a;
      // Clamp onto the box; projection never moves a lattice point away
      // from any in-box point, so the covering radius survives.
      Point p{std::clamp(x, ws.bbox_min.x, ws.bbox_max.x),
              std::clamp(y, ws.bbox_min.y, ws.bbox_max.y)};
      pts.push_back(p);
    }
  }
  // Clamping collapses the outer ring near corners; drop exact duplicates
  // keeping generation order.
  std::vector<Point> unique;
  unique.reserve(pts.size());
  struct Hash {
    std::size_t operator()(const std::pair<double, double>& p) const {
      std::hash<double> h;
      return h(p.first) ^ (h(p.second) << 1);
    }
  };
  std::unordered_set<std::pair<double, double>, Hash> seen;
  for (Point p : pts) {
    if (seen.insert({p.x, p.y}).second) unique.push_back(p);
  }
  return unique;
}

SampleSet generate_triangular(const Workspace& ws, std::size_t n) {
  double a = triangular_spacing(ws, n);
  SampleSet out;
  out.scheme = SamplingScheme::triangular;
  out.requested_n = n;
  out.dispersion_bound = a / kSqrt3;
  out.points = triangular_lattice(ws, a);
  // Corner collapse can in principle eat the surplus at tiny n; a denser
  // lattice still honors the reported bound.
  while (out.points.size() < n) {
    a *= 0.95;
    out.points = triangular_lattice(ws, a);
  }
  out.actual_n = out.points.size();
  return out;
}

SampleSet generate_random(const Workspace& ws, std::size_t n,
                          std::optional<std::uint64_t> seed) {
  SampleSet out;
  out.scheme = SamplingScheme::random_uniform;
  out.requested_n = n;
  out.actual_n = n;
  out.seed = seed;
  out.deterministic = false;
  std::mt19937_64 rng(seed.value_or(0));
  auto unit = [&rng]() {
    return std::ldexp(static_cast<double>(rng() >> 11), -53);
  };
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.points.push_back({ws.bbox_min.x + unit() * ws.width(),
                          ws.bbox_min.y + unit() * ws.height()});
  }
  out.dispersion_bound = dispersion_bound(SamplingScheme::random_uniform, ws, n);
  return out;
}

}  // namespace

SampleSet generate(const Workspace& ws, SamplingScheme scheme, std::size_t n,
                   std::optional<std::uint64_t> seed) {
  if (n == 0) throw std::domain_error("sample count must be positive");
  switch (scheme) {
    case SamplingScheme::sukharev:
      return generate_sukharev(ws, n);
    case SamplingScheme::triangular:
      return generate_triangular(ws, n);
    case SamplingScheme::random_uniform:
      return generate_random(ws, n, seed);
  }
  throw std::domain_error("unknown sampling scheme");
}

double dispersion_bound(SamplingScheme scheme, const Workspace& ws,
                        std::size_t n) {
  if (n == 0) throw std::domain_error("sample count must be positive");
  switch (scheme) {
    case SamplingScheme::sukharev: {
      auto [kx, ky] = sukharev_counts(ws, n);
      return 0.5 * std::hypot(ws.width() / static_cast<double>(kx),
                              ws.height() / static_cast<double>(ky));
    }
    case SamplingScheme::triangular:
      return triangular_spacing(ws, n) / kSqrt3;
    case SamplingScheme::random_uniform: {
      // Probabilistic estimate for i.i.d. uniform samples; scales as
      // (log n / n)^(1/2). Holds with high probability only.
      double nn = static_cast<double>(std::max<std::size_t>(n, 2));
      double area = ws.width() * ws.height();
      return 2.0 * std::sqrt(area * std::log(nn) / nn);
    }
  }
  throw std::domain_error("unknown sampling scheme");
}

EmpiricalDispersion empirical_dispersion(const Workspace& ws,
                                         const std::vector<Point>& points,
                                         double resolution) {
  if (points.empty()) throw std::domain_error("empty point set");
  if (!(resolution > 0.0)) throw std::domain_error("resolution must be positive");
  double lx = ws.width(), ly = ws.height();
  long kx = static_cast<long>(std::ceil(lx / resolution));
  long ky = static_cast<long>(std::ceil(ly / resolution));
  double gx = lx / static_cast<double>(kx);
  double gy = ly / static_cast<double>(ky);

  // Bucket grid for nearest-point queries.
  double cell = std::max(1e-12, std::sqrt(lx * ly / static_cast<double>(points.size())));
  long bx = static_cast<long>(std::ceil(lx / cell));
  long by = static_cast<long>(std::ceil(ly / cell));
  std::vector<std::vector<std::size_t>> buckets(
      static_cast<std::size_t>(bx * by));
  auto bucket_of = [&](Point p) {
    long cxi = std::min<long>(bx - 1, static_cast<long>((p.x - ws.bbox_min.x) / cell));
    long cyi = std::min<long>(by - 1, static_cast<long>((p.y - ws.bbox_min.y) / cell));
    return std::pair<long, long>{std::max<long>(0, cxi), std::max<long>(0, cyi)};
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [ci, cj] = bucket_of(points[i]);
    buckets[static_cast<std::size_t>(cj * bx + ci)].push_back(i);
  }
  auto nearest = [&](Point p) {
    auto [ci, cj] = bucket_of(p);
    double best = std::numeric_limits<double>::infinity();
    for (long ring = 0;; ++ring) {
      if (static_cast<double>(ring - 1) * cell > best) break;
      bool any = false;
      for (long dj = -ring; dj <= ring; ++dj) {
        for (long di = -ring; di <= ring; ++di) {
          if (std::max(std::abs(di), std::abs(dj)) != ring) continue;
          long ii = ci + di, jj = cj + dj;
          if (ii < 0 || jj < 0 || ii >= bx || jj >= by) continue;
          any = true;
          for (std::size_t idx : buckets[static_cast<std::size_t>(jj * bx + ii)])
            best = std::min(best, distance(p, points[idx]));
        }
      }
      if (!any && ring > bx + by) break;
    }
    return best;
  };

  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(dynamic)
  for (long j = 0; j <= ky; ++j) {
    for (long i = 0; i <= kx; ++i) {
      Point p{ws.bbox_min.x + static_cast<double>(i) * gx,
              ws.bbox_min.y + static_cast<double>(j) * gy};
      worst = std::max(worst, nearest(p));
    }
  }
  return {worst, 0.5 * std::hypot(gx, gy)};
}

}  // namespace certiplan
