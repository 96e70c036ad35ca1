#pragma once

#include <algorithm>
#include <cstddef>
#include <span>

namespace gapcert {

/// Value and slope of the cubic Hermite interpolant on [t0, t1].
struct HermitePoint {
  double value;
  double slope;
};

inline HermitePoint hermite_cubic(double t0, double f0, double d0, double t1,
                                  double f1, double d1, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const double value = h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
  const double slope = ((6 * s2 - 6 * s) * f0 + (3 * s2 - 4 * s + 1) * h * d0 +
                        (-6 * s2 + 6 * s) * f1 + (3 * s2 - 2 * s) * h * d1) /
                       h;
  return {value, slope};
}

/// Quintic Hermite interpolant using second derivatives dd0, dd1 as well.
inline HermitePoint hermite_quintic(double t0, double f0, double d0, double dd0,
                                    double t1, double f1, double d1, double dd1,
                                    double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double hd0 = h * d0, hd1 = h * d1, hhd0 = h * h * dd0, hhd1 = h * h * dd1;
  const double value = (1 - 10 * s3 + 15 * s4 - 6 * s5) * f0 +
                       (s - 6 * s3 + 8 * s4 - 3 * s5) * hd0 +
                       0.5 * (s2 - 3 * s3 + 3 * s4 - s5) * hhd0 +
                       (10 * s3 - 15 * s4 + 6 * s5) * f1 +
                       (-4 * s3 + 7 * s4 - 3 * s5) * hd1 +
                       0.5 * (s3 - 2 * s4 + s5) * hhd1;
  const double slope = ((-30 * s2 + 60 * s3 - 30 * s4) * (f0 - f1) +
                        (1 - 18 * s2 + 32 * s3 - 15 * s4) * hd0 +
                        (s - 4.5 * s2 + 6 * s3 - 2.5 * s4) * hhd0 +
                        (-12 * s2 + 28 * s3 - 15 * s4) * hd1 +
                        (1.5 * s2 - 4 * s3 + 2.5 * s4) * hhd1) /
                       h;
  return {value, slope};
}

/// Index i with knots[i] <= t < knots[i+1], clamped to the valid cell range.
inline std::size_t hermite_cell(std::span<const double> knots, double t) {
  auto it = std::upper_bound(knots.begin(), knots.end(), t);
  std::size_t i = it == knots.begin()
                      ? 0
                      : static_cast<std::size_t>(it - knots.begin()) - 1;
  return std::min(i, knots.size() - 2);
}

/// Interpolates samples (knots, values, slopes); exact at the knots.
inline HermitePoint hermite_eval(std::span<const double> knots,
                                 std::span<const double> values,
                                 std::span<const double> slopes, double t) {
  const std::size_t i = hermite_cell(knots, t);
  if (t == knots[i]) return {values[i], slopes[i]};
  if (t == knots[i + 1]) return {values[i + 1], slopes[i + 1]};
  return hermite_cubic(knots[i], values[i], slopes[i], knots[i + 1],
                       values[i + 1], slopes[i + 1], t);
}

inline HermitePoint hermite_eval(std::span<const double> knots,
                                 std::span<const double> values,
                                 std::span<const double> slopes,
                                 std::span<const double> curvatures, double t) {
  const std::size_t i = hermite_cell(knots, t);
  if (t == knots[i]) return {values[i], slopes[i]};
  if (t == knots[i + 1]) return {values[i + 1], slopes[i + 1]};
  return hermite_quintic(knots[i], values[i], slopes[i], curvatures[i], knots[i + 1],
                         values[i + 1], slopes[i + 1], curvatures[i + 1], t);
}

}  // namespace gapcert
