#pragma once

#include <iosfwd>
#include <string>

#include "gapcert/config.hpp"

namespace gapcert::cli {

enum ExitCode : int {
  kPass = 0,
  kCertificateFailure = 1,
  kUsageError = 2,
  kNumericFailure = 3,
};

/// Computes the profile, writes it to cfg.profile_out and prints a summary.
int cmd_groundstate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs the selected channels, writes the JSON report to cfg.report_out and
/// prints the margin table. `inject_failure` names a certificate id (or id
/// prefix) to force-fail; empty for none.
int cmd_verify(const RunConfig& cfg, const std::string& inject_failure, std::ostream& out,
               std::ostream& err);

/// what: "profile", "margins" or "trajectory:<op>/l<degree>/<lambda>/<shift>".
int cmd_export(const RunConfig& cfg, const std::string& what, const std::string& path,
               std::ostream& out, std::ostream& err);

}  // namespace gapcert::cli
