#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapcert/certificate.hpp"
#include "gapcert/ode.hpp"

namespace gapcert {

/// The bisection bracket does not show opposite shooting verdicts.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Sampled positive radial ground state Q of y'' + (2/r) y' - y + y^3 = 0.
 *
 * Values and derivatives sit on a strictly increasing grid starting at r = 0.
 * Beyond the last knot Q is modelled as tail_coeff * exp(-t) / t. Immutable
 * once built; safe to share between threads.
 */
struct GroundStateProfile {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivs;
  double tail_coeff = 0.0;
  double shoot_param = 0.0;
  double resolution_error = 0.0;
  /// Final bisection bracket; shoot_param lies inside it.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;

  double r_max() const { return grid.back(); }
};

enum class ShotVerdict {
  CrossesZero,  ///< y changes sign: central height too large.
  TurnsUp,      ///< y' > 0 while y > 0: central height too small.
  Undecided,    ///< neither happened before r_max.
};

const char* to_string(ShotVerdict v);

struct ShotOutcome {
  ShotVerdict verdict = ShotVerdict::Undecided;
  double radius = 0.0;
  OdeState terminal;
};

/// Integrates the ground-state ODE from the regular series at the origin with
/// central height b and classifies the trajectory.
ShotOutcome shoot(double b, double r_max, double tol);

struct GroundStateOptions {
  double r_max = 30.0;
  double r_start = 1e-6;
  double bracket_lo = 4.0;
  double bracket_hi = 5.0;
  double integrator_tol = 1e-13;
  /// Forward and backward solutions are joined here.
  double match_radius = 5.0;
  double fine_spacing = 1e-4;    // grid on [0, match_radius]
  double coarse_spacing = 1e-3;  // grid on [match_radius, r_max]
  double tail_window = 5.0;
  bool estimate_error = true;
};

/// Bisection on the shooting dichotomy to bracket width < tol, followed by a
/// forward/backward match that fixes the profile on the whole grid.
GroundStateProfile compute_ground_state(double tol,
                                        const GroundStateOptions& opts = {});

/// Q(t): cubic Hermite on the grid, tail model beyond it.
double eval_Q(const GroundStateProfile& profile, double t);
/// Q'(t), consistent with eval_Q.
double eval_dQ(const GroundStateProfile& profile, double t);

/// Checks every structural invariant of a profile; returns an empty string on
/// success or a description of the first violation.
std::string validate_profile(const GroundStateProfile& profile);

/// Test hook: a copy of the profile with values and derivatives scaled.
GroundStateProfile scaled_profile(const GroundStateProfile& profile,
                                  double factor);

struct BoundGridOptions {
  double origin_spacing = 1e-4;  // (0, 0.2]
  double near_spacing = 1e-3;    // (0.2, 2.5]
  double far_spacing = 1e-2;     // (2.5, r_max]
  /// Below this radius the centrifugal bounds are closed with Q <= Q(0).
  double origin_closure = 0.1;
  double lipschitz_factor = 20.0;
};

/// Pointwise bounds on Q used by the channel arguments, one certificate per
/// inequality and segment.
std::vector<Certificate> certify_Q_bounds(const GroundStateProfile& profile,
                                          const BoundGridOptions& grid = {});

// Serialization.
void write_profile_json(const GroundStateProfile& profile, std::ostream& out);
GroundStateProfile read_profile_json(std::istream& in);
void write_profile_csv(const GroundStateProfile& profile, std::ostream& out);

}  // namespace gapcert
