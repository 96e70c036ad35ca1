#pragma once

namespace gapcert::bessel {

// Small-argument power series. j0/j1 accept x in [0, 2], y0/y1 accept
// x in (0, 2]; anything else throws std::domain_error.
double j0(double x);
double j1(double x);
double y0(double x);
double y1(double x);

struct Anchor {
  double t = 0.0;
  double value = 0.0;
  double slope = 0.0;
};

/// G(t) = alpha1 J0(k e^{-t}) + alpha2 Y0(k e^{-t}), a solution of
/// G'' = -k^2 e^{-2t} G.
struct BesselMode {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double k = 1.0;
  Anchor anchor;

  double value(double t) const;
  double derivative(double t) const;
};

/// Matches value and slope at the anchor (t >= 5). The system determinant is
/// -2/pi for every x, so it is never singular in exact arithmetic.
BesselMode solve_mode(const Anchor& anchor, double k);

enum class ModeVerdict { PositiveGrowing, Inconclusive };

const char* to_string(ModeVerdict v);

/// PositiveGrowing when alpha2 < 0 and G stays positive for all t >= t_a by the
/// monotone bounds J0(x) in [J0(x_a), 1] and Y0(x) <= Y0(x_a) < 0 on (0, x_a];
/// then the Y0 term also forces G -> infinity. With alpha1 > 0 this is just
/// G(t_a) > 0.
ModeVerdict mode_verdict(const BesselMode& mode);

}  // namespace gapcert::bessel
