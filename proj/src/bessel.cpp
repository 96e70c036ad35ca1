#include "gapcert/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gapcert::bessel {

namespace {

constexpr int kTerms = 30;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kPi = std::numbers::pi;
// Largest x where J0 > 0 and Y0 < 0 are used by mode_verdict.
constexpr double kMonotoneLimit = 0.85;

void check_range(double x, bool allow_zero) {
  if (!(x <= 2.0) || (allow_zero ? x < 0.0 : x <= 0.0)) {
    throw std::domain_error("bessel: argument outside the series range");
  }
}

}  // namespace

double j0(double x) {
  check_range(x, true);
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < kTerms; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
  }
  return sum;
}

double j1(double x) {
  check_range(x, true);
  const double q = 0.25 * x * x;
  double term = 0.5 * x, sum = term;
  for (int k = 1; k < kTerms; ++k) {
    term *= -q / (static_cast<double>(k) * (k + 1));
    sum += term;
  }
  return sum;
}

double y0(double x) {
  check_range(x, false);
  const double q = 0.25 * x * x;
  double term = 1.0, harmonic = 0.0, sum = 0.0;
  for (int k = 1; k < kTerms; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    sum -= harmonic * term;
  }
  return (2.0 / kPi) * ((std::log(0.5 * x) + kEulerGamma) * j0(x) + sum);
}

double y1(double x) {
  check_range(x, false);
  const double q = 0.25 * x * x;
  // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
  double term = 0.5 * x, harmonic = 0.0;
  double sum = term * (1.0 - 2.0 * kEulerGamma);
  for (int k = 1; k < kTerms; ++k) {
    term *= -q / (static_cast<double>(k) * (k + 1));
    harmonic += 1.0 / k;
    sum += term * (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * kEulerGamma);
  }
  return -2.0 / (kPi * x) + (2.0 / kPi) * std::log(0.5 * x) * j1(x) - sum / kPi;
}

double BesselMode::value(double t) const {
  const double x = k * std::exp(-t);
  return alpha1 * j0(x) + alpha2 * y0(x);
}

double BesselMode::derivative(double t) const {
  const double x = k * std::exp(-t);
  return x * (alpha1 * j1(x) + alpha2 * y1(x));
}

BesselMode solve_mode(const Anchor& anchor, double k) {
  if (!(anchor.t >= 5.0)) throw std::invalid_argument("solve_mode: anchor must lie at t >= 5");
  if (!(k > 0.0 && k <= 2.0)) throw std::invalid_argument("solve_mode: k must lie in (0, 2]");
  const double x = k * std::exp(-anchor.t);
  const double a = j0(x), b = y0(x), c = x * j1(x), d = x * y1(x);
  const double det = a * d - b * c;
  if (det == 0.0 || !std::isfinite(det)) throw std::runtime_error("solve_mode: singular system");
  BesselMode m;
  m.alpha1 = (anchor.value * d - b * anchor.slope) / det;
  m.alpha2 = (a * anchor.slope - c * anchor.value) / det;
  m.k = k;
  m.anchor = anchor;
  return m;
}

const char* to_string(ModeVerdict v) {
  return v == ModeVerdict::PositiveGrowing ? "PositiveGrowing" : "Inconclusive";
}

ModeVerdict mode_verdict(const BesselMode& m) {
  const double xa = m.k * std::exp(-m.anchor.t);
  if (!(m.alpha2 < 0.0) || xa > kMonotoneLimit) return ModeVerdict::Inconclusive;
  const double lower = std::min(m.alpha1 * j0(xa), m.alpha1) + m.alpha2 * y0(xa);
  return lower > 0.0 ? ModeVerdict::PositiveGrowing : ModeVerdict::Inconclusive;
}

}  // namespace gapcert::bessel
