#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapcert/certify.hpp"
#include "gapcert/groundstate.hpp"

namespace gapcert {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Settings for a CLI run. Stored as an INI file with the sections
 * [tolerances], [grids], [profile] and [run]; every key is optional and an
 * empty file yields the defaults below.
 */
struct RunConfig {
  // [tolerances]
  double integrator_tol = 1e-12;
  double kernel_tol = 1e-14;
  double bisection_tol = 1e-11;
  double profile_tol = 1e-13;
  double checkpoint_slack = 0.02;
  // [grids]
  std::vector<double> lambda_grid = default_lambda_grid();
  double t0_lo = 0.2;
  double t0_hi = 1.5;
  double t0_step = 0.01;
  double origin_spacing = 1e-4;
  double near_spacing = 1e-3;
  double far_spacing = 1e-2;
  // [profile]
  double r_max = 30.0;
  std::string profile_in;  // load instead of computing when set
  // [run]
  std::string operator_sel = "both";
  std::string report_out = "gap_report.json";
  std::string profile_out = "profile.json";

  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError on malformed input, unknown keys or invalid values.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
void write_config(const RunConfig& cfg, std::ostream& out);

/// Throws ConfigError describing the first invalid setting.
void validate(const RunConfig& cfg);

std::vector<double> parse_grid(const std::string& text);

PipelineConfig pipeline_config(const RunConfig& cfg);
GroundStateOptions groundstate_options(const RunConfig& cfg);

}  // namespace gapcert
