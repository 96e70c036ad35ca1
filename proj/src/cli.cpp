#include "gapcert/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gapcert::cli {

namespace {

/// Signals a usage, configuration or IO problem (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << content;
  f.close();
  if (!f) throw UsageError("failed writing " + path);
}

GroundStateProfile obtain_profile(const RunConfig& cfg) {
  if (cfg.profile_in.empty()) {
    return compute_ground_state(cfg.bisection_tol, groundstate_options(cfg));
  }
  std::ifstream in(cfg.profile_in);
  if (!in) throw UsageError("cannot read profile " + cfg.profile_in);
  try {
    return read_profile_json(in);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BracketError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const IntegrationError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
}

struct TrajectorySpec {
  Operator op;
  int degree;
  double lambda;
  double shift;
};

TrajectorySpec parse_trajectory_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '/')) parts.push_back(item);
  if (parts.size() != 4 || parts[1].size() < 2 || parts[1][0] != 'l') {
    throw UsageError("trajectory spec must look like lplus/l1/1.0/0, got '" + text + "'");
  }
  TrajectorySpec s{};
  if (parts[0] == "lplus") {
    s.op = Operator::Lplus;
  } else if (parts[0] == "lminus") {
    s.op = Operator::Lminus;
  } else {
    throw UsageError("unknown operator '" + parts[0] + "'");
  }
  try {
    std::size_t used = 0;
    s.degree = std::stoi(parts[1].substr(1), &used);
    if (used + 1 != parts[1].size()) throw std::invalid_argument("degree");
    s.lambda = std::stod(parts[2]);
    s.shift = std::stod(parts[3]);
  } catch (const std::exception&) {
    throw UsageError("malformed trajectory spec '" + text + "'");
  }
  if (s.degree < 0 || s.degree > 1) throw UsageError("only l = 0 and l = 1 are integrated");
  if (!(s.lambda >= 0.0 && s.lambda <= 1.0)) throw UsageError("lambda must lie in [0, 1]");
  if (!(s.shift >= 0.0)) throw UsageError("shift must be nonnegative");
  return s;
}

}  // namespace

int cmd_groundstate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const GroundStateProfile p = compute_ground_state(cfg.bisection_tol, groundstate_options(cfg));
    std::ostringstream json;
    write_profile_json(p, json);
    write_file(cfg.profile_out, json.str());
    out << std::setprecision(15) << "shoot_param " << p.shoot_param << " tail_coeff "
        << p.tail_coeff << " resolution_error " << std::setprecision(3) << p.resolution_error
        << '\n';
    return static_cast<int>(kPass);
  });
}

int cmd_verify(const RunConfig& cfg, const std::string& inject_failure, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const GroundStateProfile p = obtain_profile(cfg);
    const PipelineConfig pc = pipeline_config(cfg);
    auto certs = run_pipeline(cfg.operator_sel, p, pc);
    if (!inject_failure.empty()) {
      bool hit = false;
      for (auto& c : certs) {
        if (c.id.rfind(inject_failure, 0) == 0) {
          mark_failed(c, "injected failure");
          hit = true;
          break;
        }
      }
      if (!hit) throw UsageError("no certificate matches '" + inject_failure + "'");
    }
    const GapReport report = assemble_report(cfg.operator_sel, std::move(certs), p, pc);
    std::ostringstream json;
    write_report_json(report, json);
    write_file(cfg.report_out, json.str());
    write_margin_table(report, out);
    for (const Certificate* c : report.failures()) {
      err << "failed: " << c->id << (c->notes.empty() ? "" : " (" + c->notes + ")") << '\n';
    }
    return static_cast<int>(report.pass() ? kPass : kCertificateFailure);
  });
}

int cmd_export(const RunConfig& cfg, const std::string& what, const std::string& path,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    std::ostringstream csv;
    if (what == "profile") {
      write_profile_csv(obtain_profile(cfg), csv);
    } else if (what == "margins") {
      const GroundStateProfile p = obtain_profile(cfg);
      const PipelineConfig pc = pipeline_config(cfg);
      const GapReport report =
          assemble_report(cfg.operator_sel, run_pipeline(cfg.operator_sel, p, pc), p, pc);
      write_margins_csv(report, csv);
    } else if (what.rfind("trajectory:", 0) == 0) {
      const TrajectorySpec s = parse_trajectory_spec(what.substr(11));
      const GroundStateProfile p = obtain_profile(cfg);
      const bool shifted = s.shift > 0.0;
      const EffectivePotential v{s.op, s.degree, s.lambda, s.shift, shifted, &p};
      const OdeState init = shifted ? OdeState{0.0, 0.0, 1.0}
                                    : launch_at_origin(v, 1e-3, s.degree == 0 ? -1.0 : 1.0);
      write_trajectory_csv(integrate(v, init, 30.0, cfg.integrator_tol), csv);
    } else {
      throw UsageError("unknown export target '" + what + "'");
    }
    write_file(path, csv.str());
    out << "wrote " << path << '\n';
    return static_cast<int>(kPass);
  });
}

}  // namespace gapcert::cli
