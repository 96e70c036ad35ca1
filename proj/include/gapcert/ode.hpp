#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace gapcert {

/// Raised when the integrator cannot continue (step-size underflow, non-finite
/// state, or a failing right-hand side). Never used to encode a verdict.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point on a solution of the scalar second-order ODE y'' = a(t, y, y').
struct OdeState {
  double t = 0.0;
  double y = 0.0;
  double dy = 0.0;
};

using Acceleration = std::function<double(double t, double y, double dy)>;

struct StepperOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double max_step = 0.05;
  double initial_step = 1e-3;
  /// Smallest step, relative to max(1, |t|), before giving up.
  double min_step = 1e-14;
  /// When positive, take steps of exactly this size with no error control.
  double fixed_step = 0.0;
};

/**
 * Dormand-Prince 5(4) stepper for y'' = a(t, y, y'), written as the first-order
 * system (y, y')' = (y', a). Integrates forward or backward in t depending on
 * the sign of `direction`. The stepper keeps its last accepted step size so
 * repeated `advance_to` calls over a fine output grid stay efficient.
 */
class Dopri5Stepper {
 public:
  Dopri5Stepper(Acceleration accel, OdeState init, StepperOptions opts,
                double direction = 1.0);

  const OdeState& state() const { return state_; }
  std::size_t accepted_steps() const { return accepted_; }
  std::size_t rejected_steps() const { return rejected_; }

  /// Takes one accepted step, never passing `t_limit`.
  void step(double t_limit);

  /// Steps until the state lands exactly on `t_target`.
  void advance_to(double t_target);

 private:
  void rhs(double t, double y, double dy, double& fy, double& fdy) const;

  Acceleration accel_;
  OdeState state_;
  StepperOptions opts_;
  double dir_;
  double h_;
  double k1y_ = 0.0;
  double k1dy_ = 0.0;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
};

}  // namespace gapcert
