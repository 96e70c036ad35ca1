#include "gapcert/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace gapcert {

namespace {

namespace pt = boost::property_tree;

std::string repr(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += repr(v[i]);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " is not a number: '" + text + "'");
  }
  if (text.find_first_not_of(" \t", used) != std::string::npos) {
    throw ConfigError("config: " + key + " is not a number: '" + text + "'");
  }
  return v;
}

const std::set<std::string> kKeys = {
    "tolerances.integrator", "tolerances.kernel", "tolerances.bisection", "tolerances.profile",
    "tolerances.checkpoint_slack", "grids.lambda", "grids.t0_lo", "grids.t0_hi",
    "grids.t0_step", "grids.origin_spacing", "grids.near_spacing", "grids.far_spacing",
    "profile.r_max", "profile.load", "run.operator", "run.report", "run.profile"};

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(to_double("grid entry", item));
  }
  return out;
}

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config: key outside a section: " + section);
    for (const auto& [key, value] : body) {
      if (!kKeys.count(section + "." + key)) {
        throw ConfigError("config: unknown key " + section + "." + key);
      }
    }
  }

  RunConfig c;
  auto num = [&](const char* path, double& field) {
    if (auto v = tree.get_optional<std::string>(path)) field = to_double(path, *v);
  };
  auto str = [&](const char* path, std::string& field) {
    if (auto v = tree.get_optional<std::string>(path)) field = *v;
  };
  num("tolerances.integrator", c.integrator_tol);
  num("tolerances.kernel", c.kernel_tol);
  num("tolerances.bisection", c.bisection_tol);
  num("tolerances.profile", c.profile_tol);
  num("tolerances.checkpoint_slack", c.checkpoint_slack);
  if (auto v = tree.get_optional<std::string>("grids.lambda")) c.lambda_grid = parse_grid(*v);
  num("grids.t0_lo", c.t0_lo);
  num("grids.t0_hi", c.t0_hi);
  num("grids.t0_step", c.t0_step);
  num("grids.origin_spacing", c.origin_spacing);
  num("grids.near_spacing", c.near_spacing);
  num("grids.far_spacing", c.far_spacing);
  num("profile.r_max", c.r_max);
  str("profile.load", c.profile_in);
  str("run.operator", c.operator_sel);
  str("run.report", c.report_out);
  str("run.profile", c.profile_out);
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  return parse_config(in);
}

void write_config(const RunConfig& c, std::ostream& out) {
  out << "[tolerances]\n"
      << "integrator = " << repr(c.integrator_tol) << '\n'
      << "kernel = " << repr(c.kernel_tol) << '\n'
      << "bisection = " << repr(c.bisection_tol) << '\n'
      << "profile = " << repr(c.profile_tol) << '\n'
      << "checkpoint_slack = " << repr(c.checkpoint_slack) << "\n\n"
      << "[grids]\n"
      << "lambda = " << join(c.lambda_grid) << '\n'
      << "t0_lo = " << repr(c.t0_lo) << '\n'
      << "t0_hi = " << repr(c.t0_hi) << '\n'
      << "t0_step = " << repr(c.t0_step) << '\n'
      << "origin_spacing = " << repr(c.origin_spacing) << '\n'
      << "near_spacing = " << repr(c.near_spacing) << '\n'
      << "far_spacing = " << repr(c.far_spacing) << "\n\n"
      << "[profile]\n"
      << "r_max = " << repr(c.r_max) << '\n';
  if (!c.profile_in.empty()) out << "load = " << c.profile_in << '\n';
  out << "\n[run]\n"
      << "operator = " << c.operator_sel << '\n'
      << "report = " << c.report_out << '\n'
      << "profile = " << c.profile_out << '\n';
}

void validate(const RunConfig& c) {
  if (!(c.integrator_tol > 0.0 && c.kernel_tol > 0.0 && c.bisection_tol > 0.0 && c.profile_tol > 0.0)) {
    throw ConfigError("config: tolerances must be positive");
  }
  if (!(c.r_max > 5.0)) throw ConfigError("config: r_max must exceed 5");
  if (c.operator_sel != "lplus" && c.operator_sel != "lminus" && c.operator_sel != "both") {
    throw ConfigError("config: operator must be lplus, lminus or both");
  }
  try {
    validate_config(pipeline_config(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

PipelineConfig pipeline_config(const RunConfig& c) {
  PipelineConfig p;
  p.lambda_grid = c.lambda_grid;
  p.t0_lo = c.t0_lo;
  p.t0_hi = c.t0_hi;
  p.t0_step = c.t0_step;
  p.tol = c.integrator_tol;
  p.kernel_tol = c.kernel_tol;
  p.checkpoint_slack = c.checkpoint_slack;
  p.bounds.origin_spacing = c.origin_spacing;
  p.bounds.near_spacing = c.near_spacing;
  p.bounds.far_spacing = c.far_spacing;
  return p;
}

GroundStateOptions groundstate_options(const RunConfig& c) {
  GroundStateOptions o;
  o.r_max = c.r_max;
  o.integrator_tol = c.profile_tol;
  return o;
}

}  // namespace gapcert
