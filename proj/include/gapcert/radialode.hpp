#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "gapcert/groundstate.hpp"
#include "gapcert/ode.hpp"

namespace gapcert {

enum class Operator { Lplus, Lminus };

const char* to_string(Operator op);
/// 3 for L+, 1 for L-.
double coupling(Operator op);

/**
 * V(t) = (1 - lambda) + l(l+1)/(t+shift)^2 - c Q(t+shift)^2, with c = 3 for L+
 * and c = 1 for L-. drop_constant removes the 1 - lambda term.
 */
struct EffectivePotential {
  Operator op = Operator::Lplus;
  int degree = 0;
  double lambda = 1.0;
  double shift = 0.0;
  bool drop_constant = false;
  const GroundStateProfile* profile = nullptr;
};

double eval_potential(const EffectivePotential& v, double t);

/// u'' = V(t) u.
using Potential = std::function<double(double)>;
Potential as_function(const EffectivePotential& v);

/// Regular solution data at t_start: t^2 + c4 t^4 for l = 1, (0, sign) at
/// t = 0 for l = 0 (t_start is ignored there).
OdeState launch_at_origin(const EffectivePotential& v, double t_start = 1e-3,
                          double sign = 1.0);

/// Samples (t_i, F_i, F'_i) with Hermite dense output: quintic when the
/// second derivatives are supplied, cubic otherwise.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<double> t, std::vector<double> values,
             std::vector<double> slopes, double error_estimate = 0.0);
  Trajectory(std::vector<double> t, std::vector<double> values,
             std::vector<double> slopes, std::vector<double> curvatures,
             double error_estimate = 0.0);

  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& values() const { return f_; }
  const std::vector<double>& slopes() const { return df_; }
  /// Empty when the trajectory carries no second derivatives.
  const std::vector<double>& curvatures() const { return ddf_; }
  std::size_t size() const { return t_.size(); }
  double t_begin() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  bool covers(double a, double b) const;

  /// Dense value and derivative; throws std::out_of_range outside the samples.
  double value(double t) const;
  double slope(double t) const;

  /// Estimated global error from a tolerance-halving rerun (absolute, sup
  /// over samples); 0 when the trajectory was built from data.
  double error_estimate() const { return error_; }

 private:
  std::vector<double> t_, f_, df_, ddf_;
  double error_ = 0.0;
};

struct IntegrateOptions {
  double max_step = 0.05;
  bool estimate_error = true;
};

Trajectory integrate(const Potential& v, OdeState init, double t_end,
                     double tol, const IntegrateOptions& opts = {});
Trajectory integrate(const EffectivePotential& v, OdeState init, double t_end,
                     double tol, const IntegrateOptions& opts = {});

struct ZeroReport {
  bool found = false;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double t_star = 0.0;
  double tolerance = 0.0;
};

/// First sign change strictly after `after`, refined by bisection on the
/// dense output to a bracket of width <= tol.
ZeroReport first_positive_zero(const Trajectory& traj, double after, double tol);

struct AsymptoticFit {
  double c1 = 0.0;  // coefficient of t^2
  double c2 = 0.0;  // coefficient of 1/t
  /// sup |F - fit| / sup |F| over the window samples.
  double residual = 0.0;
};

/// Least-squares fit of F on the basis {t^2, 1/t} over samples in [from, to].
AsymptoticFit fit_asymptotics(const Trajectory& traj, double from, double to);

/// F1 F2' - F2 F1' at t.
double wronskian(const Trajectory& a, const Trajectory& b, double t);

void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace gapcert
