#include "gapcert/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gapcert {

namespace {

std::size_t cell_count(double a, double b, double spacing) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil((b - a) / spacing - 1e-9)));
}

}  // namespace

ComparisonCertificate check_comparison(const Potential& major, const Potential& minor,
                                       const Trajectory& F, const Trajectory& f,
                                       double a, double b,
                                       const ComparisonOptions& opts) {
  if (!(a < b)) throw std::invalid_argument("check_comparison: empty interval");
  if (!F.covers(a, b) || !f.covers(a, b)) {
    throw std::invalid_argument("check_comparison: trajectories do not cover the interval");
  }
  ComparisonCertificate c;
  c.a = a;
  c.b = b;
  c.noise = std::max(opts.noise_floor, 10.0 * (F.error_estimate() + f.error_estimate()));
  const double tol = c.noise;

  const double Fa = F.value(a), fa = f.value(a);
  const double dFa = F.slope(a), dfa = f.slope(a);
  c.initial_value_gap = Fa - fa;
  c.riccati_form = fa > tol && Fa > tol;
  if (c.riccati_form) {
    c.initial_slope_gap = dFa / Fa - dfa / fa;
    c.initial_ok = c.initial_value_gap >= -tol && c.initial_slope_gap >= -tol;
  } else {
    c.initial_slope_gap = dFa - dfa;
    c.initial_ok = std::abs(c.initial_value_gap) <= tol && fa >= -tol &&
                   c.initial_slope_gap >= -tol;
  }

  const std::size_t n = cell_count(a, b, opts.spacing);
  c.spacing = (b - a) / static_cast<double>(n);
  c.points = n + 1;
  c.min_potential_gap = std::numeric_limits<double>::infinity();
  c.min_solution_gap = std::numeric_limits<double>::infinity();
  c.min_minorant = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? b : a + c.spacing * static_cast<double>(i);
    c.min_potential_gap = std::min(c.min_potential_gap, major(t) - minor(t));
    c.min_solution_gap = std::min(c.min_solution_gap, F.value(t) - f.value(t));
    if (i > 0 && i < n) c.min_minorant = std::min(c.min_minorant, f.value(t));
  }
  if (n == 1) c.min_minorant = f.value(0.5 * (a + b));

  c.pass = c.initial_ok && c.min_potential_gap >= -tol &&
           c.min_solution_gap >= -tol && c.min_minorant > 0.0;
  return c;
}

double riccati_gap(const Trajectory& F, const Trajectory& f, double a, double b,
                   double spacing) {
  if (!(a < b)) throw std::invalid_argument("riccati_gap: empty interval");
  if (!F.covers(a, b) || !f.covers(a, b)) {
    throw std::invalid_argument("riccati_gap: trajectories do not cover the interval");
  }
  const std::size_t n = cell_count(a, b, spacing);
  const double h = (b - a) / static_cast<double>(n);
  double out = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? b : a + h * static_cast<double>(i);
    const double Fv = F.value(t), fv = f.value(t);
    if (!(Fv > 0.0) || !(fv > 0.0)) {
      throw std::domain_error("riccati_gap: nonpositive trajectory value");
    }
    out = std::min(out, F.slope(t) / Fv - f.slope(t) / fv);
  }
  return out;
}

}  // namespace gapcert
