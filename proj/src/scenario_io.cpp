#include "certiplan/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace certiplan {

namespace {

using nlohmann::json;

Point parse_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ScenarioParseError(std::string(what) + " must be a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Extended reals: JSON has no infinity literal.
json ext(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? json("inf") : json("-inf");
}

json matrix_json(const std::vector<double>& m, std::size_t rows,
                 std::size_t cols) {
  json out = json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(ext(m[i * cols + j]));
    out.push_back(row);
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ScenarioParseError(std::string("malformed scenario file: ") + e.what());
  }
  if (!j.contains("workspace") || !j.contains("safety_distance") ||
      !j.contains("agents") || !j.contains("goals"))
    throw ScenarioParseError(
        "scenario needs workspace, safety_distance, agents, goals");

  Point mn = parse_point(j["workspace"].at("min"), "workspace.min");
  Point mx = parse_point(j["workspace"].at("max"), "workspace.max");
  std::vector<Polygon> obstacles;
  if (j.contains("obstacles")) {
    for (const auto& o : j["obstacles"]) {
      std::vector<Point> verts;
      for (const auto& v : o.at("polygon")) verts.push_back(parse_point(v, "vertex"));
      obstacles.emplace_back(std::move(verts));  // GeometryError on degenerate input
    }
  }
  bool boundary = j.value("boundary_is_obstacle", false);
  Workspace ws(mn, mx, std::move(obstacles), boundary);

  double s = j["safety_distance"].get<double>();
  if (!(s > 0.0)) throw ScenarioParseError("safety_distance must be positive");

  std::vector<Point> agents, goals;
  for (const auto& a : j["agents"]) agents.push_back(parse_point(a, "agent"));
  for (const auto& g : j["goals"]) goals.push_back(parse_point(g, "goal"));
  if (agents.empty() || goals.empty())
    throw ScenarioParseError("need at least one agent and one goal");

  auto validate = [&](const std::vector<Point>& pts, const std::string& role) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!ws.inside_bbox(pts[i]))
        throw ScenarioParseError(role + " " + std::to_string(i) +
                                 " lies outside the workspace");
      double c = point_obstacle_distance(ws, pts[i]);
      if (c < s) throw ClearanceError(role, i, c, s);
    }
  };
  validate(agents, "agent");
  validate(goals, "goal");

  Scenario sc{std::move(ws), std::move(agents), std::move(goals), s, false};
  if (sc.agents.size() < sc.goals.size()) {
    std::swap(sc.agents, sc.goals);
    sc.roles_swapped = true;
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& scenario) {
  json j;
  j["workspace"]["min"] = {scenario.workspace.bbox_min.x,
                           scenario.workspace.bbox_min.y};
  j["workspace"]["max"] = {scenario.workspace.bbox_max.x,
                           scenario.workspace.bbox_max.y};
  j["obstacles"] = json::array();
  for (const auto& poly : scenario.workspace.obstacles) {
    json verts = json::array();
    for (Point v : poly.vertices()) verts.push_back({v.x, v.y});
    j["obstacles"].push_back({{"polygon", verts}});
  }
  if (scenario.workspace.boundary_is_obstacle) j["boundary_is_obstacle"] = true;
  j["safety_distance"] = scenario.safety_distance;
  j["agents"] = json::array();
  for (Point p : scenario.agents) j["agents"].push_back({p.x, p.y});
  j["goals"] = json::array();
  for (Point p : scenario.goals) j["goals"].push_back({p.x, p.y});
  if (scenario.roles_swapped) j["roles_swapped"] = true;
  return j.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << scenario_to_json(scenario);
}

std::string report_to_json(const CertificationReport& report,
                           bool include_timing) {
  json j;
  j["schema_version"] = 1;
  j["growth_condition_ok"] = report.growth_condition_ok;
  j["iterations"] = json::array();
  for (const auto& rec : report.iterations) {
    json it;
    it["n_requested"] = rec.n_requested;
    it["n_actual"] = rec.n_actual;
    it["dispersion_bound"] = rec.bounds.dispersion_bound;
    it["delta"] = rec.bounds.delta;
    it["radius_lower"] = rec.bounds.radius_lower;
    it["radius_upper"] = rec.bounds.radius_upper;
    it["beta"] = rec.bounds.beta;
    it["lower_valid"] = rec.bounds.lower_valid;
    it["lower"] = matrix_json(rec.bounds.lower, rec.bounds.num_agents,
                              rec.bounds.num_goals);
    it["upper"] = matrix_json(rec.bounds.upper, rec.bounds.num_agents,
                              rec.bounds.num_goals);
    if (rec.assignment_valid) {
      it["weights"] = matrix_json(rec.weights.entries, rec.weights.num_agents,
                                  rec.weights.num_tasks);
      it["assignment"] = rec.assignment.task_to_agent;
      it["bottleneck"] = ext(rec.assignment.bottleneck_value);
      it["lambda_down"] =
          matrix_json(rec.intervals.lambda_down, rec.intervals.num_agents,
                      rec.intervals.num_tasks);
      it["lambda_up"] = matrix_json(rec.intervals.lambda_up,
                                    rec.intervals.num_agents,
                                    rec.intervals.num_tasks);
      it["certificate"] = rec.certificate;
      it["direct_certificate"] = rec.direct_cert;
    }
    if (include_timing) it["wall_time_seconds"] = rec.wall_time_seconds;
    j["iterations"].push_back(std::move(it));
  }
  j["final"]["certified"] = report.certified;
  if (report.certified)
    j["final"]["assignment"] = report.final_assignment.task_to_agent;
  if (include_timing) j["final"]["total_time_seconds"] = report.total_time_seconds;
  return j.dump(2) + "\n";
}

void write_report(const CertificationReport& report, const std::string& path,
                  bool include_timing) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  out << report_to_json(report, include_timing);
}

namespace {

struct Mapper {
  const Workspace& ws;
  double ppm;
  double px(double x) const { return (x - ws.bbox_min.x) * ppm; }
  double py(double y) const { return (ws.bbox_max.y - y) * ppm; }
};

void append_polyline(std::string& svg, const Mapper& m,
                     const std::vector<Point>& pts, const std::string& style) {
  if (pts.size() < 2) return;
  svg += "<polyline fill=\"none\" " + style + " points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) svg += ' ';
    svg += fmt(m.px(pts[k].x)) + "," + fmt(m.py(pts[k].y));
  }
  svg += "\"/>\n";
}

// Per-row run-length rects for the region dist < threshold.
std::string raster_band(const Workspace& ws, const Mapper& m, double cell,
                        double threshold, const std::string& fill) {
  long nx = static_cast<long>(std::ceil(ws.width() / cell));
  long ny = static_cast<long>(std::ceil(ws.height() / cell));
  std::vector<std::string> rows(static_cast<std::size_t>(ny));
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < ny; ++j) {
    std::string& row = rows[static_cast<std::size_t>(j)];
    double y = ws.bbox_min.y + (static_cast<double>(j) + 0.5) * cell;
    long run_start = -1;
    for (long i = 0; i <= nx; ++i) {
      bool in = false;
      if (i < nx) {
        double x = ws.bbox_min.x + (static_cast<double>(i) + 0.5) * cell;
        in = point_obstacle_distance(ws, {x, y}) < threshold;
      }
      if (in && run_start < 0) run_start = i;
      if (!in && run_start >= 0) {
        double x0 = ws.bbox_min.x + static_cast<double>(run_start) * cell;
        double x1 = ws.bbox_min.x + static_cast<double>(i) * cell;
        double ylo = ws.bbox_min.y + static_cast<double>(j) * cell;
        double yhi = ylo + cell;
        row += "<rect x=\"" + fmt(m.px(x0)) + "\" y=\"" + fmt(m.py(yhi)) +
               "\" width=\"" + fmt((x1 - x0) * m.ppm) + "\" height=\"" +
               fmt(cell * m.ppm) + "\" fill=\"" + fill + "\"/>\n";
        run_start = -1;
      }
    }
  }
  std::string out;
  for (const auto& r : rows) out += r;
  return out;
}

}  // namespace

std::string render_iteration_svg(const Scenario& scenario,
                                 const IterationRecord& record,
                                 const SvgOptions& options) {
  const Workspace& ws = scenario.workspace;
  Mapper m{ws, options.pixels_per_meter};
  double cell = options.raster_cell > 0.0
                    ? options.raster_cell
                    : std::max(ws.width(), ws.height()) / 400.0;
  double s = scenario.safety_distance;
  double delta = record.bounds.lower_valid ? record.bounds.delta : 0.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt(ws.width() * m.ppm) + "\" height=\"" + fmt(ws.height() * m.ppm) +
         "\" viewBox=\"0 0 " + fmt(ws.width() * m.ppm) + " " +
         fmt(ws.height() * m.ppm) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (!ws.obstacles.empty()) {
    svg += raster_band(ws, m, cell, s, "#e06060");
    if (delta < s) svg += raster_band(ws, m, cell, s - delta, "#9a9a9a");
    for (const auto& poly : ws.obstacles) {
      svg += "<polygon fill=\"black\" points=\"";
      const auto& v = poly.vertices();
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) svg += ' ';
        svg += fmt(m.px(v[k].x)) + "," + fmt(m.py(v[k].y));
      }
      svg += "\"/>\n";
    }
  }

  const std::size_t na = record.bounds.num_agents;
  const std::size_t ng = record.bounds.num_goals;
  auto pair_fails = [&](std::size_t i, std::size_t j) {
    if (!record.assignment_valid) return false;
    std::size_t k = i * ng + j;
    double u = record.bounds.upper[k];
    if (std::isinf(u))
      return !(std::isinf(record.intervals.lambda_up[k]) &&
               std::isinf(record.intervals.lambda_down[k]));
    double half = 0.5 * (u - record.bounds.lower[k]);
    return !(half <= record.intervals.lambda_up[k] &&
             half <= record.intervals.lambda_down[k]);
  };
  auto pair_assigned = [&](std::size_t i, std::size_t j) {
    return record.assignment_valid && record.assignment.assigns(i, j);
  };

  // Yellow underlay for pairs that fail the containment check.
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      if (!pair_fails(i, j)) continue;
      std::size_t k = i * ng + j;
      append_polyline(svg, m, record.bounds.upper_paths[k].waypoints,
                      "stroke=\"#f2d93b\" stroke-width=\"7\"");
      append_polyline(svg, m, record.bounds.lower_paths[k].waypoints,
                      "stroke=\"#f2d93b\" stroke-width=\"7\"");
    }
  }
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      std::size_t k = i * ng + j;
      std::string width = pair_assigned(i, j) ? "3" : "1";
      append_polyline(svg, m, record.bounds.upper_paths[k].waypoints,
                      "stroke=\"#2050c0\" stroke-width=\"" + width + "\"");
      append_polyline(svg, m, record.bounds.lower_paths[k].waypoints,
                      "stroke=\"#2050c0\" stroke-width=\"" + width +
                          "\" stroke-dasharray=\"4 4\"");
    }
  }

  for (Point p : scenario.agents) {
    svg += "<circle cx=\"" + fmt(m.px(p.x)) + "\" cy=\"" + fmt(m.py(p.y)) +
           "\" r=\"5\" fill=\"#2050c0\"/>\n";
  }
  for (Point g : scenario.goals) {
    svg += "<polygon fill=\"#209040\" points=\"";
    for (int k = 0; k < 10; ++k) {
      double ang = -M_PI / 2.0 + k * M_PI / 5.0;
      double rad = (k % 2 == 0) ? 8.0 : 3.5;
      if (k) svg += ' ';
      svg += fmt(m.px(g.x) + rad * std::cos(ang)) + "," +
             fmt(m.py(g.y) + rad * std::sin(ang));
    }
    svg += "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_iteration_svg(const Scenario& scenario, const IterationRecord& record,
                         const std::string& path, const SvgOptions& options) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write SVG file: " + path);
  out << render_iteration_svg(scenario, record, options);
}

}  // namespace certiplan
