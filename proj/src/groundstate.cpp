#include "gapcert/groundstate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gapcert/hermite.hpp"
#include "scan.hpp"

namespace gapcert {

namespace {

double ground_state_accel(double r, double y, double dy) {
  return -2.0 * dy / r + y - y * y * y;
}

// Regular expansion y = b + (b - b^3) r^2 / 6 + O(r^4).
OdeState series_launch(double b, double r) {
  const double a2 = (b - b * b * b) / 6.0;
  return {r, b + a2 * r * r, 2.0 * a2 * r};
}

// Exact decaying solution c e^{-r}/r of the linearized equation.
OdeState tail_launch(double c, double r) {
  const double v = c * std::exp(-r) / r;
  return {r, v, -v * (1.0 + 1.0 / r)};
}

struct ProfileGrid {
  std::vector<double> fine;    // [0, r_m]
  std::vector<double> coarse;  // [r_m, r_max]
};

ProfileGrid make_grid(const GroundStateOptions& o) {
  ProfileGrid g;
  const auto n1 = static_cast<std::size_t>(
      std::max(1.0, std::round(o.match_radius / o.fine_spacing)));
  const auto n2 = static_cast<std::size_t>(
      std::max(1.0, std::round((o.r_max - o.match_radius) / o.coarse_spacing)));
  g.fine.resize(n1 + 1);
  for (std::size_t i = 0; i <= n1; ++i) {
    g.fine[i] = o.match_radius * static_cast<double>(i) / static_cast<double>(n1);
  }
  g.coarse.resize(n2 + 1);
  for (std::size_t j = 0; j <= n2; ++j) {
    g.coarse[j] = o.match_radius + (o.r_max - o.match_radius) *
                                       static_cast<double>(j) /
                                       static_cast<double>(n2);
  }
  g.fine.back() = o.match_radius;
  g.coarse.front() = o.match_radius;
  g.coarse.back() = o.r_max;
  return g;
}

StepperOptions profile_stepper(double tol, double spacing) {
  StepperOptions s;
  s.rtol = tol;
  s.atol = tol * 1e-3;
  s.max_step = spacing;
  s.initial_step = std::min(spacing, 1e-6);
  return s;
}

struct Sweep {
  OdeState end;
  std::vector<double> y, dy;
  std::size_t steps = 0;
};

// Forward from the series launch, landing on every fine knot.
Sweep sweep_forward(double b, const std::vector<double>& knots, double r_start,
                    double tol, bool store) {
  const double spacing = knots[1] - knots[0];
  Dopri5Stepper st(ground_state_accel, series_launch(b, r_start),
                   profile_stepper(tol, spacing));
  Sweep s;
  if (store) {
    s.y.reserve(knots.size());
    s.dy.reserve(knots.size());
    s.y.push_back(b);
    s.dy.push_back(0.0);
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    st.advance_to(knots[i]);
    if (store) {
      s.y.push_back(st.state().y);
      s.dy.push_back(st.state().dy);
    }
  }
  s.end = st.state();
  s.steps = st.accepted_steps();
  return s;
}

// Backward from the exact linear tail at r_max, landing on every coarse knot.
// Stored values come out ordered by increasing radius.
Sweep sweep_backward(double c, const std::vector<double>& knots, double tol,
                     bool store) {
  const double spacing = knots[1] - knots[0];
  Dopri5Stepper st(ground_state_accel, tail_launch(c, knots.back()),
                   profile_stepper(tol, spacing), -1.0);
  Sweep s;
  if (store) {
    s.y.assign(knots.size(), 0.0);
    s.dy.assign(knots.size(), 0.0);
    s.y.back() = st.state().y;
    s.dy.back() = st.state().dy;
  }
  for (std::size_t j = knots.size() - 1; j-- > 0;) {
    st.advance_to(knots[j]);
    if (store) {
      s.y[j] = st.state().y;
      s.dy[j] = st.state().dy;
    }
  }
  s.end = st.state();
  s.steps = st.accepted_steps();
  return s;
}

struct Match {
  double b = 0.0;
  double c = 0.0;
  double defect = 0.0;
};

// Newton on (b, c) so the forward and backward solutions agree in value and
// slope at the join. Jacobian by one-sided differences.
Match match_at_join(double b, const ProfileGrid& g, const GroundStateOptions& o) {
  const double rm = o.match_radius;
  const double tol = o.integrator_tol;
  auto fwd = sweep_forward(b, g.fine, o.r_start, tol, false).end;
  double c = fwd.y * rm * std::exp(rm);

  double defect = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 12; ++iter) {
    fwd = sweep_forward(b, g.fine, o.r_start, tol, false).end;
    const auto bwd = sweep_backward(c, g.coarse, tol, false).end;
    const double f0 = fwd.y - bwd.y;
    const double f1 = fwd.dy - bwd.dy;
    defect = std::abs(f0) + std::abs(f1);

    const double db = 1e-7 * b;
    const double dc = 1e-7 * c;
    const auto fwd_b = sweep_forward(b + db, g.fine, o.r_start, tol, false).end;
    const auto bwd_c = sweep_backward(c + dc, g.coarse, tol, false).end;
    const double j00 = (fwd_b.y - fwd.y) / db;
    const double j10 = (fwd_b.dy - fwd.dy) / db;
    const double j01 = -(bwd_c.y - bwd.y) / dc;
    const double j11 = -(bwd_c.dy - bwd.dy) / dc;
    const double det = j00 * j11 - j01 * j10;
    if (det == 0.0 || !std::isfinite(det)) {
      throw IntegrationError("ground state match: singular Jacobian");
    }
    const double step_b = (f0 * j11 - f1 * j01) / det;
    const double step_c = (j00 * f1 - j10 * f0) / det;
    b -= step_b;
    c -= step_c;
    const double eps = std::numeric_limits<double>::epsilon();
    if (std::abs(step_b) <= 4 * eps * b && std::abs(step_c) <= 4 * eps * c) break;
  }
  fwd = sweep_forward(b, g.fine, o.r_start, tol, false).end;
  const auto bwd = sweep_backward(c, g.coarse, tol, false).end;
  defect = std::abs(fwd.y - bwd.y) + std::abs(fwd.dy - bwd.dy);
  return {b, c, defect};
}

struct Assembled {
  GroundStateProfile profile;
  std::size_t steps = 0;
};

Assembled assemble(double b, double c, const GroundStateOptions& o) {
  const auto g = make_grid(o);
  auto fwd = sweep_forward(b, g.fine, o.r_start, o.integrator_tol, true);
  auto bwd = sweep_backward(c, g.coarse, o.integrator_tol, true);

  Assembled a;
  auto& p = a.profile;
  p.grid = g.fine;
  p.values = std::move(fwd.y);
  p.derivs = std::move(fwd.dy);
  // The join knot keeps the forward values; the backward ones agree to the
  // matching defect.
  p.grid.insert(p.grid.end(), g.coarse.begin() + 1, g.coarse.end());
  p.values.insert(p.values.end(), bwd.y.begin() + 1, bwd.y.end());
  p.derivs.insert(p.derivs.end(), bwd.dy.begin() + 1, bwd.dy.end());
  p.shoot_param = b;
  a.steps = fwd.steps + bwd.steps;
  return a;
}

double fit_tail(const GroundStateProfile& p, double window) {
  const double from = p.r_max() - window;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    const double r = p.grid[i];
    if (r < from) continue;
    sum += std::log(p.values[i] * r) + r;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("tail window contains no knots");
  return std::exp(sum / static_cast<double>(n));
}

}  // namespace

const char* to_string(ShotVerdict v) {
  switch (v) {
    case ShotVerdict::CrossesZero:
      return "CrossesZero";
    case ShotVerdict::TurnsUp:
      return "TurnsUp";
    case ShotVerdict::Undecided:
      return "Undecided";
  }
  return "?";
}

ShotOutcome shoot(double b, double r_max, double tol) {
  if (!(b > 0.0)) throw std::invalid_argument("shoot: central height must be positive");
  if (!(r_max > 0.0)) throw std::invalid_argument("shoot: r_max must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("shoot: tol must be positive");

  const double r0 = std::min(1e-6, 0.5 * r_max);
  StepperOptions so;
  so.rtol = tol;
  so.atol = tol;
  so.max_step = 0.05;
  so.initial_step = 1e-6;
  Dopri5Stepper st(ground_state_accel, series_launch(b, r0), so);

  while (st.state().t < r_max) {
    const OdeState prev = st.state();
    st.step(r_max);
    const OdeState& cur = st.state();
    if (cur.y <= 0.0) {
      double lo = prev.t, hi = cur.t;
      if (cur.y < 0.0) {
        for (int k = 0; k < 60 && hi - lo > 1e-14 * hi; ++k) {
          const double mid = 0.5 * (lo + hi);
          const double v =
              hermite_cubic(prev.t, prev.y, prev.dy, cur.t, cur.y, cur.dy, mid).value;
          (v > 0.0 ? lo : hi) = mid;
        }
      }
      return {ShotVerdict::CrossesZero, hi, cur};
    }
    if (cur.dy > 0.0) return {ShotVerdict::TurnsUp, cur.t, cur};
  }
  return {ShotVerdict::Undecided, st.state().t, st.state()};
}

GroundStateProfile compute_ground_state(double tol, const GroundStateOptions& o) {
  if (!(tol > 0.0)) throw std::invalid_argument("compute_ground_state: tol must be positive");
  if (!(o.r_max > o.match_radius && o.match_radius > 0.0)) {
    throw std::invalid_argument("compute_ground_state: need 0 < match_radius < r_max");
  }

  const ShotVerdict v_lo = shoot(o.bracket_lo, o.r_max, o.integrator_tol).verdict;
  const ShotVerdict v_hi = shoot(o.bracket_hi, o.r_max, o.integrator_tol).verdict;
  double turn_side, cross_side;
  if (v_lo == ShotVerdict::TurnsUp && v_hi == ShotVerdict::CrossesZero) {
    turn_side = o.bracket_lo;
    cross_side = o.bracket_hi;
  } else if (v_lo == ShotVerdict::CrossesZero && v_hi == ShotVerdict::TurnsUp) {
    turn_side = o.bracket_hi;
    cross_side = o.bracket_lo;
  } else {
    std::ostringstream msg;
    msg << "bisection bracket [" << o.bracket_lo << ", " << o.bracket_hi
        << "] gives verdicts " << to_string(v_lo) << " / " << to_string(v_hi);
    throw BracketError(msg.str());
  }

  while (std::abs(cross_side - turn_side) >= tol) {
    const double mid = 0.5 * (turn_side + cross_side);
    const ShotVerdict v = shoot(mid, o.r_max, o.integrator_tol).verdict;
    if (v == ShotVerdict::CrossesZero) {
      cross_side = mid;
    } else if (v == ShotVerdict::TurnsUp) {
      turn_side = mid;
    } else {
      turn_side = cross_side = mid;
    }
  }
  const double lo = std::min(turn_side, cross_side);
  const double hi = std::max(turn_side, cross_side);

  const auto grid = make_grid(o);
  const Match m = match_at_join(0.5 * (lo + hi), grid, o);
  if (m.b < lo - 4 * tol || m.b > hi + 4 * tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "matched central height " << m.b << " left the bisection bracket ["
        << lo << ", " << hi << "]";
    throw IntegrationError(msg.str());
  }

  Assembled main = assemble(m.b, m.c, o);
  GroundStateProfile& p = main.profile;
  p.bracket_lo = lo;
  p.bracket_hi = hi;
  p.tail_coeff = fit_tail(p, o.tail_window);

  const double qmax = *std::max_element(p.values.begin(), p.values.end());
  double err = m.defect;
  err = std::max(err, std::numeric_limits<double>::epsilon() * qmax *
                          std::sqrt(static_cast<double>(main.steps)));
  if (o.estimate_error) {
    GroundStateOptions half = o;
    half.integrator_tol *= 0.5;
    half.fine_spacing *= 0.5;
    half.coarse_spacing *= 0.5;
    const Assembled ref = assemble(m.b, m.c, half);
    const auto& q = ref.profile;
    for (std::size_t i = 0; i < q.grid.size(); ++i) {
      err = std::max(err, std::abs(eval_Q(p, q.grid[i]) - q.values[i]));
    }
  }
  p.resolution_error = err;
  return p;
}

double eval_Q(const GroundStateProfile& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("eval_Q: radius must be nonnegative");
  if (t > p.r_max()) return p.tail_coeff * std::exp(-t) / t;
  return hermite_eval(p.grid, p.values, p.derivs, t).value;
}

double eval_dQ(const GroundStateProfile& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("eval_dQ: radius must be nonnegative");
  if (t > p.r_max()) return -p.tail_coeff * std::exp(-t) * (1.0 / t + 1.0 / (t * t));
  return hermite_eval(p.grid, p.values, p.derivs, t).slope;
}

std::string validate_profile(const GroundStateProfile& p) {
  const std::size_t n = p.grid.size();
  if (n < 2) return "grid has fewer than two knots";
  if (p.values.size() != n || p.derivs.size() != n) return "array lengths differ";
  if (p.grid[0] != 0.0) return "grid does not start at r = 0";
  if (p.derivs[0] != 0.0) return "Q'(0) is not zero";
  for (std::size_t i = 1; i < n; ++i) {
    if (!(p.grid[i] > p.grid[i - 1])) return "grid not strictly increasing";
    if (!(p.values[i] > 0.0)) return "Q not strictly positive";
    if (!(p.values[i] < p.values[i - 1])) return "Q not strictly decreasing";
    if (!(p.derivs[i] < 0.0)) return "Q' not negative";
  }
  if (!(p.values[0] < 4.4)) return "max Q not below 4.4";
  if (!(p.tail_coeff > 187.0 / 69.0 && p.tail_coeff < 350.0 / 129.0)) {
    return "tail coefficient outside (187/69, 350/129)";
  }
  return {};
}

GroundStateProfile scaled_profile(const GroundStateProfile& p, double factor) {
  GroundStateProfile s = p;
  for (auto& v : s.values) v *= factor;
  for (auto& d : s.derivs) d *= factor;
  s.tail_coeff *= factor;
  s.shoot_param *= factor;
  return s;
}

std::vector<Certificate> certify_Q_bounds(const GroundStateProfile& p,
                                          const BoundGridOptions& g) {
  using detail::ScanResult;
  using detail::scan_segment;
  const double R = p.r_max();
  const double c = p.tail_coeff;
  const double q0 = p.values.front();
  const double lf = g.lipschitz_factor;
  auto Q = [&](double t) { return eval_Q(p, t); };

  std::vector<Certificate> out;
  auto finish = [&](Certificate cert, const ScanResult& s, double closure,
                    double floor, double spacing) {
    cert.margin = std::min(s.min_value, closure);
    cert.pass = cert.margin > floor && cert.margin > 0.0 && s.covered();
    cert.with("floor", floor)
        .with("grid_min", s.min_value)
        .with("argmin", s.argmin)
        .with("analytic_closure", closure)
        .with("spacing", spacing)
        .with("points", static_cast<double>(s.points))
        .with("lipschitz_cover_ratio", s.cover_ratio);
    if (!s.covered()) mark_failed(cert, "margin does not clear the Lipschitz budget");
    out.push_back(std::move(cert));
  };

  {
    auto f = [&](double t) { return 2.714 - t * std::exp(t) * Q(t); };
    auto s = scan_segment(f, 2.5, R, g.far_spacing, 0.0, lf);
    Certificate cert{"Q.bound.decay_envelope", "0 < Q(t) <= 2.714 e^{-t}/t for t >= 2.5"};
    cert.notes = "quantity 2.714 - t e^t Q(t); t > r_max closed by the tail model";
    finish(std::move(cert), s, 2.714 - c, 0.0, g.far_spacing);
  }
  {
    auto f = [&](double t) {
      const double w = Q(t) * std::exp(t);
      return 1.0 - 3.0 * w * w;
    };
    auto s = scan_segment(f, 5.0, R, g.far_spacing, 0.0, lf);
    Certificate cert{"Q.bound.bessel_envelope", "3 Q(t)^2 <= e^{-2t} for t >= 5"};
    cert.notes = "quantity 1 - 3 Q^2 e^{2t}; increasing in t beyond r_max under the tail model";
    finish(std::move(cert), s, 1.0 - 3.0 * c * c / (R * R), 0.0, g.far_spacing);
  }
  {
    auto f = [&](double t) { return 2.0 / (t * t) - 3.0 * Q(t) * Q(t); };
    const double tc = g.origin_closure;
    auto s = scan_segment(f, tc, 0.2, g.origin_spacing, 0.0, lf);
    Certificate cert{"Q.bound.centrifugal_l1.origin",
                     "2/t^2 - 3 Q(t)^2 > 4.9 (less 0.1 slack) for 0 < t <= 0.2"};
    cert.notes = "(0, origin_closure] closed with Q <= Q(0)";
    finish(std::move(cert), s, 2.0 / (tc * tc) - 3.0 * q0 * q0, 4.8, g.origin_spacing);
  }
  {
    auto f = [&](double t) { return 2.0 / (t * t) - 3.0 * Q(t) * Q(t); };
    auto s = scan_segment(f, 1.5, 2.5, g.near_spacing, 0.0, lf);
    Certificate cert{"Q.bound.centrifugal_l1.mid",
                     "2/t^2 - 3 Q(t)^2 > 0.29 (less 0.1 slack) for 1.5 <= t <= 2.5"};
    finish(std::move(cert), s, std::numeric_limits<double>::infinity(), 0.19,
           g.near_spacing);
  }
  {
    auto f = [&](double t) { return 2.0 - 3.0 * t * t * Q(t) * Q(t); };
    auto s = scan_segment(f, 2.5, R, g.far_spacing, 0.0, lf);
    Certificate cert{"Q.bound.centrifugal_l1.tail", "2/t^2 - 3 Q(t)^2 > 0.5/t^2 for t >= 2.5"};
    cert.notes = "scaled quantity 2 - 3 t^2 Q^2; t > r_max closed by the tail model";
    finish(std::move(cert), s, 2.0 - 3.0 * c * c * std::exp(-2.0 * R), 0.5,
           g.far_spacing);
  }
  {
    auto f = [&](double t) { return 6.0 / (t * t) - 3.0 * Q(t) * Q(t); };
    auto s = scan_segment(f, 0.2, 1.5, g.near_spacing, 0.0, lf);
    Certificate cert{"Q.bound.centrifugal_l2",
                     "6/t^2 - 3 Q(t)^2 > 2.18 (less 0.1 slack) for 0.2 <= t <= 1.5"};
    finish(std::move(cert), s, std::numeric_limits<double>::infinity(), 2.08,
           g.near_spacing);
  }
  {
    auto f = [&](double t) { return 2.0 - t * t * Q(t) * Q(t); };
    const double tc = g.origin_closure;
    auto s = scan_segment(f, tc, 2.5, g.near_spacing, 0.0, lf);
    s.merge(scan_segment(f, 2.5, R, g.far_spacing, 0.0, lf));
    Certificate cert{"Q.bound.lminus_centrifugal", "Q(t)^2 < 2/t^2 for all t > 0"};
    cert.notes = "scaled quantity 2 - t^2 Q^2; origin closed with Q <= Q(0), tail by the tail model";
    const double closure =
        std::min(2.0 - tc * tc * q0 * q0, 2.0 - c * c * std::exp(-2.0 * R));
    finish(std::move(cert), s, closure, 0.0, g.near_spacing);
  }
  return out;
}

}  // namespace gapcert
