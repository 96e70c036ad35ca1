#include "gapcert/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace gapcert {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace

Dopri5Stepper::Dopri5Stepper(Acceleration accel, OdeState init,
                             StepperOptions opts, double direction)
    : accel_(std::move(accel)),
      state_(init),
      opts_(opts),
      dir_(direction >= 0.0 ? 1.0 : -1.0) {
  if (!(opts_.rtol > 0.0) || !(opts_.atol > 0.0)) {
    throw std::invalid_argument("Dopri5Stepper: tolerances must be positive");
  }
  if (!(opts_.max_step > 0.0)) {
    throw std::invalid_argument("Dopri5Stepper: max_step must be positive");
  }
  h_ = opts_.fixed_step > 0.0 ? opts_.fixed_step
                              : std::min(opts_.initial_step, opts_.max_step);
  rhs(state_.t, state_.y, state_.dy, k1y_, k1dy_);
}

void Dopri5Stepper::rhs(double t, double y, double dy, double& fy,
                        double& fdy) const {
  fy = dy;
  fdy = accel_(t, y, dy);
  if (!std::isfinite(fdy)) {
    throw IntegrationError("non-finite right-hand side at t = " +
                           std::to_string(t));
  }
}

void Dopri5Stepper::step(double t_limit) {
  const double remaining = dir_ * (t_limit - state_.t);
  if (remaining <= 0.0) return;
  const bool fixed = opts_.fixed_step > 0.0;

  for (;;) {
    double h = std::min(h_, fixed ? opts_.fixed_step : opts_.max_step);
    const double floor_h = opts_.min_step * std::max(1.0, std::abs(state_.t));
    bool last = false;
    // Never leave a remainder below the step floor.
    if (h >= remaining * (1.0 - 1e-12) || remaining - h < 2.0 * floor_h) {
      h = remaining;
      last = true;
    }
    if (h < floor_h) {
      throw IntegrationError("step size underflow at t = " +
                             std::to_string(state_.t));
    }
    const double sh = dir_ * h;
    const double t = state_.t, y = state_.y, dy = state_.dy;

    double k2y, k2d, k3y, k3d, k4y, k4d, k5y, k5d, k6y, k6d, k7y, k7d;
    rhs(t + c2 * sh, y + sh * (a21 * k1y_), dy + sh * (a21 * k1dy_), k2y, k2d);
    rhs(t + c3 * sh, y + sh * (a31 * k1y_ + a32 * k2y),
        dy + sh * (a31 * k1dy_ + a32 * k2d), k3y, k3d);
    rhs(t + c4 * sh, y + sh * (a41 * k1y_ + a42 * k2y + a43 * k3y),
        dy + sh * (a41 * k1dy_ + a42 * k2d + a43 * k3d), k4y, k4d);
    rhs(t + c5 * sh,
        y + sh * (a51 * k1y_ + a52 * k2y + a53 * k3y + a54 * k4y),
        dy + sh * (a51 * k1dy_ + a52 * k2d + a53 * k3d + a54 * k4d), k5y, k5d);
    rhs(t + sh,
        y + sh * (a61 * k1y_ + a62 * k2y + a63 * k3y + a64 * k4y + a65 * k5y),
        dy + sh * (a61 * k1dy_ + a62 * k2d + a63 * k3d + a64 * k4d +
                   a65 * k5d),
        k6y, k6d);
    const double y_new =
        y + sh * (b1 * k1y_ + b3 * k3y + b4 * k4y + b5 * k5y + b6 * k6y);
    const double dy_new =
        dy + sh * (b1 * k1dy_ + b3 * k3d + b4 * k4d + b5 * k5d + b6 * k6d);
    const double t_new = last ? t_limit : t + sh;
    rhs(t_new, y_new, dy_new, k7y, k7d);

    if (!std::isfinite(y_new) || !std::isfinite(dy_new)) {
      throw IntegrationError("non-finite state at t = " + std::to_string(t));
    }

    if (!fixed) {
      const double ey = sh * (e1 * k1y_ + e3 * k3y + e4 * k4y + e5 * k5y +
                              e6 * k6y + e7 * k7y);
      const double ed = sh * (e1 * k1dy_ + e3 * k3d + e4 * k4d + e5 * k5d +
                              e6 * k6d + e7 * k7d);
      const double sy =
          opts_.atol + opts_.rtol * std::max(std::abs(y), std::abs(y_new));
      const double sd =
          opts_.atol + opts_.rtol * std::max(std::abs(dy), std::abs(dy_new));
      const double err = std::max(std::abs(ey) / sy, std::abs(ed) / sd);
      if (err > 1.0) {
        ++rejected_;
        h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
        continue;
      }
      const double grow =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      // A step clipped to hit t_limit says little about the natural step.
      if (!last || h >= h_) h_ = h * grow;
    }

    state_ = {t_new, y_new, dy_new};
    k1y_ = k7y;
    k1dy_ = k7d;
    ++accepted_;
    return;
  }
}

void Dopri5Stepper::advance_to(double t_target) {
  while (dir_ * (t_target - state_.t) > 0.0) step(t_target);
}

}  // namespace gapcert
