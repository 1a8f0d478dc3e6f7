#pragma once

// Scenario ingestion, machine-readable certification reports, and SVG
// figure emission.

#include <string>

#include "certiplan/certifier.hpp"

namespace certiplan {

class ScenarioParseError : public std::runtime_error {
 public:
  explicit ScenarioParseError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class ClearanceError : public std::runtime_error {
 public:
  ClearanceError(const std::string& role, std::size_t index, double clearance,
                 double required)
      : std::runtime_error(role + " " + std::to_string(index) +
                           " has clearance " + std::to_string(clearance) +
                           " below the safety distance " +
                           std::to_string(required)),
        role(role), index(index) {}
  std::string role;
  std::size_t index;
};

// Load and validate a scenario. When goals outnumber agents the roles
// are swapped and roles_swapped is set.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

std::string scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::string& path);

// Versioned JSON report. Wall-clock fields are informational; pass
// include_timing = false for byte-reproducible output.
std::string report_to_json(const CertificationReport& report,
                           bool include_timing = true);
void write_report(const CertificationReport& report, const std::string& path,
                  bool include_timing = true);

struct SvgOptions {
  double raster_cell = 0.0;   // 0 = auto (about 1/400 of the larger span)
  double pixels_per_meter = 160.0;
};

// Layered figure: obstacles black, s-inflation red, (s-delta)-inflation
// grey, upper paths solid blue, lower paths dotted blue, assigned pairs
// thick, pairs failing the containment check highlighted yellow, robots
// blue dots, goals green stars. Output is deterministic byte-for-byte.
std::string render_iteration_svg(const Scenario& scenario,
                                 const IterationRecord& record,
                                 const SvgOptions& options = {});
void write_iteration_svg(const Scenario& scenario, const IterationRecord& record,
                         const std::string& path,
                         const SvgOptions& options = {});

}  // namespace certiplan
