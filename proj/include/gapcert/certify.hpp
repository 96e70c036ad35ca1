#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gapcert/certificate.hpp"
#include "gapcert/groundstate.hpp"
#include "gapcert/radialode.hpp"

namespace gapcert {

std::vector<double> default_lambda_grid();

struct PipelineConfig {
  std::vector<double> lambda_grid = default_lambda_grid();
  double t0_lo = 0.2;
  double t0_hi = 1.5;
  double t0_step = 0.01;
  double tol = 1e-12;
  /// The lambda = 0 kernel comparisons run out to t = 10 against a decaying
  /// solution; the growing mode amplifies local errors by about e^{2t}.
  double kernel_tol = 1e-14;
  /// Allowed deviation of F(5), F'(5) from 0.47 and 0.03.
  double checkpoint_slack = 0.02;
  std::vector<double> eps_sweep_lplus = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> eps_sweep_lminus = {0.0, 0.25, 0.5, 0.75};
  double horizon = 30.0;
  double sturm_from = 5.0;
  double sturm_to = 20.0;
  double launch_t = 1e-3;
  BoundGridOptions bounds;
};

/// t0_lo, t0_lo + step, ..., t0_hi (the last point is always included).
std::vector<double> t0_grid(const PipelineConfig& cfg);

/// Throws std::invalid_argument describing the first out-of-range setting.
void validate_config(const PipelineConfig& cfg);

// L+ channels.
Certificate verify_l_ge_2(const GroundStateProfile& profile,
                          const BoundGridOptions& grid = {});
std::vector<Certificate> verify_l1(const GroundStateProfile& profile,
                                   const PipelineConfig& cfg = {});
Certificate verify_l1_growth(const GroundStateProfile& profile, double t0,
                             const PipelineConfig& cfg = {});
std::vector<Certificate> verify_l0_lplus(const GroundStateProfile& profile,
                                         const PipelineConfig& cfg = {});

// L- channels.
Certificate verify_lminus_l_ge_1(const GroundStateProfile& profile,
                                 const BoundGridOptions& grid = {});
std::vector<Certificate> verify_l0_lminus(const GroundStateProfile& profile,
                                          const PipelineConfig& cfg = {});

struct NegativeEigenvalue {
  double eps0 = 0.0;
  Certificate cert;
};

/// The L+ radial l = 0 bound state: G'' = (1 + eps0 - 3Q^2) G, G(0) = 0,
/// G'(0) = 1 decays only at eps0; below it G changes sign, above it G stays
/// positive and grows.
NegativeEigenvalue find_negative_eigenvalue(const GroundStateProfile& profile,
                                            const PipelineConfig& cfg = {});

/// Bound certificates plus every channel of the selected operators;
/// selection is "lplus", "lminus" or "both".
std::vector<Certificate> run_pipeline(const std::string& selection,
                                      const GroundStateProfile& profile,
                                      const PipelineConfig& cfg = {});

struct GapReport {
  std::string operator_name;  // "lplus", "lminus" or "both"
  std::string verdict;
  bool complete = false;
  double shoot_param = 0.0;
  double resolution_error = 0.0;
  std::vector<double> lambda_grid;
  std::vector<double> t0_grid;
  double tol = 0.0;
  std::vector<Certificate> certificates;

  bool pass() const { return complete && verdict == "gap certified at desk scale"; }
  std::vector<const Certificate*> failures() const;
};

/// Conjunction of all certificates. An empty list or a missing channel for a
/// selected operator marks the report incomplete ("not certified").
GapReport assemble_report(const std::string& operator_name,
                          std::vector<Certificate> certs,
                          const GroundStateProfile& profile,
                          const PipelineConfig& cfg);

void write_report_json(const GapReport& report, std::ostream& out);
void write_margin_table(const GapReport& report, std::ostream& out);
void write_margins_csv(const GapReport& report, std::ostream& out);

}  // namespace gapcert
