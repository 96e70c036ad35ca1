#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gapcert/cli.hpp"

using gapcert::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Spectral gap certification for the linearized cubic NLS ground state"};
  app.require_subcommand(1);

  std::string config_path, out_path, profile_path, op, lambda_grid, inject, what;
  double tol = 0.0, t0_step = 0.0;

  auto* gs = app.add_subcommand("groundstate", "compute the ground state profile");
  gs->add_option("--config", config_path, "INI configuration file");
  gs->add_option("--tol", tol, "bisection tolerance")->check(CLI::PositiveNumber);
  gs->add_option("--out", out_path, "profile JSON path");

  auto* verify = app.add_subcommand("verify", "run the gap certificates");
  verify->add_option("--config", config_path, "INI configuration file");
  verify->add_option("--operator", op, "lplus, lminus or both")
      ->check(CLI::IsMember({"lplus", "lminus", "both"}));
  verify->add_option("--lambda-grid", lambda_grid, "comma separated lambda values in (0, 1]");
  verify->add_option("--t0-grid-step", t0_step, "spacing of the shift grid on [0.2, 1.5]")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol", tol, "integrator tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "report JSON path");
  verify->add_option("--profile", profile_path, "load a profile JSON instead of computing");
  verify->add_option("--inject-failure", inject, "force-fail the named certificate (testing)");

  auto* exp = app.add_subcommand("export", "write CSV data");
  exp->add_option("what", what, "profile | margins | trajectory:<op>/l<deg>/<lambda>/<shift>")
      ->required();
  exp->add_option("--config", config_path, "INI configuration file");
  exp->add_option("--out", out_path, "CSV path");
  exp->add_option("--profile", profile_path, "load a profile JSON instead of computing");
  exp->add_option("--operator", op, "operator selection for margins")
      ->check(CLI::IsMember({"lplus", "lminus", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gapcert::cli::kUsageError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = gapcert::load_config(config_path);
    if (!profile_path.empty()) cfg.profile_in = profile_path;
    if (!op.empty()) cfg.operator_sel = op;
    if (!lambda_grid.empty()) cfg.lambda_grid = gapcert::parse_grid(lambda_grid);
    if (t0_step > 0.0) cfg.t0_step = t0_step;
  } catch (const gapcert::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gapcert::cli::kUsageError;
  }

  if (*gs) {
    if (tol > 0.0) cfg.bisection_tol = tol;
    if (!out_path.empty()) cfg.profile_out = out_path;
    return gapcert::cli::cmd_groundstate(cfg, std::cout, std::cerr);
  }
  if (*verify) {
    if (tol > 0.0) cfg.integrator_tol = tol;
    if (!out_path.empty()) cfg.report_out = out_path;
    return gapcert::cli::cmd_verify(cfg, inject, std::cout, std::cerr);
  }
  return gapcert::cli::cmd_export(cfg, what, out_path.empty() ? "export.csv" : out_path,
                                  std::cout, std::cerr);
}
