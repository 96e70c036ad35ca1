#pragma once

// Grid scanning shared by the bound and channel certificates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace gapcert::detail {

struct ScanResult {
  double min_value = std::numeric_limits<double>::infinity();
  double argmin = 0.0;
  /// min over knots of (f_i - rhs) / (factor * L_i * h_i); > 1 means covered.
  double cover_ratio = std::numeric_limits<double>::infinity();
  std::size_t points = 0;

  bool covered() const { return cover_ratio > 1.0; }

  void merge(const ScanResult& other) {
    if (other.min_value < min_value) {
      min_value = other.min_value;
      argmin = other.argmin;
    }
    cover_ratio = std::min(cover_ratio, other.cover_ratio);
    points += other.points;
  }
};

/// Samples f on [a, b] with spacing at most h (both ends included), records
/// the minimum and checks that every knot clears `rhs` by more than `factor`
/// times the local Lipschitz estimate times the spacing.
template <typename F>
ScanResult scan_segment(F&& f, double a, double b, double h, double rhs,
                        double factor) {
  const auto n = static_cast<std::size_t>(std::ceil((b - a) / h - 1e-9));
  const std::size_t count = std::max<std::size_t>(n, 1) + 1;
  const double step = (b - a) / static_cast<double>(count - 1);

  ScanResult out;
  double prev = 0.0, cur = f(a), next = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = a + step * static_cast<double>(i);
    if (i + 1 < count) next = f(a + step * static_cast<double>(i + 1));
    if (cur < out.min_value) {
      out.min_value = cur;
      out.argmin = t;
    }
    double slope = 0.0;
    if (i > 0) slope = std::max(slope, std::abs(cur - prev) / step);
    if (i + 1 < count) slope = std::max(slope, std::abs(next - cur) / step);
    const double budget = factor * slope * step;
    const double ratio = budget > 0.0
                             ? (cur - rhs) / budget
                             : (cur > rhs ? std::numeric_limits<double>::infinity()
                                          : 0.0);
    out.cover_ratio = std::min(out.cover_ratio, ratio);
    prev = cur;
    cur = next;
  }
  out.points = count;
  return out;
}

}  // namespace gapcert::detail
