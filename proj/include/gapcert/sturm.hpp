#pragma once

#include "gapcert/radialode.hpp"

namespace gapcert {

/**
 * Empirical record of a Sturm comparison on [a, b]: for F'' = G F and
 * f'' = g f with G >= g, F(a) >= f(a) >= 0 and F'(a) >= f'(a), the minorant
 * f > 0 forces F >= f. The conclusion is sampled, not assumed.
 */
struct ComparisonCertificate {
  double a = 0.0;
  double b = 0.0;
  double spacing = 0.0;
  std::size_t points = 0;
  double noise = 0.0;

  double min_potential_gap = 0.0;  // min (G - g)
  /// Initial data in equality form (F(a) = f(a), F'(a) >= f'(a)) or, when
  /// both start positive, in Riccati form f'/f - F'/F <= 0 with F(a) >= f(a).
  bool riccati_form = false;
  double initial_value_gap = 0.0;  // F(a) - f(a)
  double initial_slope_gap = 0.0;  // F'(a) - f'(a), or F'/F - f'/f
  bool initial_ok = false;
  double min_solution_gap = 0.0;   // min (F - f)
  double min_minorant = 0.0;       // min f on the open interval
  bool pass = false;
};

struct ComparisonOptions {
  double spacing = 1e-2;
  /// Lower bound on the tolerance granted to sampled minima; the working
  /// tolerance is max(noise_floor, 10 * (error of F + error of f)).
  double noise_floor = 1e-12;
};

ComparisonCertificate check_comparison(const Potential& major,
                                       const Potential& minor,
                                       const Trajectory& F, const Trajectory& f,
                                       double a, double b,
                                       const ComparisonOptions& opts = {});

/// Grid minimum of F'/F - f'/f on [a, b]; both must stay positive there.
double riccati_gap(const Trajectory& F, const Trajectory& f, double a, double b,
                   double spacing = 1e-2);

}  // namespace gapcert
