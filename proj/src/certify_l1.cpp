#include <algorithm>
#include <cmath>
#include <numbers>

#include "certify_internal.hpp"
#include "gapcert/certify.hpp"
#include "gapcert/sturm.hpp"

namespace gapcert {

namespace {

using detail::find_cert;
using detail::fixed;

constexpr double kZeroTol = 1e-12;
// Positive root of a(a-1) = 1/2.
constexpr double kEulerPlus = (1.0 + std::numbers::sqrt3) / 2.0;
constexpr double kEulerMinus = (1.0 - std::numbers::sqrt3) / 2.0;
constexpr double kGrowthEnd = 2.5;
constexpr double kEulerEnd = 10.0;

struct GrowthData {
  double min_ratio = 0.0;  // min G/t on (0, 2.5]
  double slope = 0.0;      // G'(2.5)
  double euler_a = 0.0;
  bool sturm_pass = false;
  double margin = 0.0;
};

GrowthData growth_data(const GroundStateProfile& profile, double t0, double tol) {
  const EffectivePotential v{Operator::Lplus, 1, 1.0, t0, true, &profile};
  const Trajectory g = integrate(v, {0.0, 0.0, 1.0}, kEulerEnd, tol);
  GrowthData d;
  d.min_ratio =
      detail::sample_min(g, 0.0, kGrowthEnd, [](double t, double y) { return y / t; }).value;
  d.slope = g.slope(kGrowthEnd);

  // Euler minorant G1'' = 0.5/(t+t0)^2 G1 from the data at 2.5:
  // G1 = A s^{a+} + B s^{a-}, s = t + t0.
  const double s_a = kGrowthEnd + t0;
  const double ga = g.value(kGrowthEnd);
  d.euler_a = (d.slope - kEulerMinus * ga / s_a) * std::pow(s_a, 1.0 - kEulerPlus) /
              (kEulerPlus - kEulerMinus);
  const double euler_b = (kEulerPlus * ga / s_a - d.slope) * std::pow(s_a, 1.0 - kEulerMinus) /
                         (kEulerPlus - kEulerMinus);
  std::vector<double> ts, fs, dfs;
  for (int i = 0; i <= 750; ++i) {
    const double t = kGrowthEnd + 0.01 * i;
    const double s = t + t0;
    ts.push_back(t);
    fs.push_back(d.euler_a * std::pow(s, kEulerPlus) + euler_b * std::pow(s, kEulerMinus));
    dfs.push_back(d.euler_a * kEulerPlus * std::pow(s, kEulerPlus - 1.0) +
                  euler_b * kEulerMinus * std::pow(s, kEulerMinus - 1.0));
  }
  const Trajectory euler(std::move(ts), std::move(fs), std::move(dfs));
  const Potential minor = [t0](double t) { return 0.5 / ((t + t0) * (t + t0)); };
  d.sturm_pass = check_comparison(as_function(v), minor, g, euler, kGrowthEnd, kEulerEnd).pass;
  d.margin = std::min(d.min_ratio - 0.01, d.slope - 1e-3);
  return d;
}

Certificate growth_certificate(const GrowthData& d, double t0, bool tail_bound_ok) {
  Certificate c{"Lplus.l1.growth[t0=" + fixed(t0) + "]",
                "G'' = (2/(t+t0)^2 - 3Q(t+t0)^2) G, G(0)=0, G'(0)=1 has G > 0 on (0,2.5], "
                "G'(2.5) > 0, then grows like an Euler solution s^{(1+sqrt3)/2}"};
  c.margin = d.margin;
  c.pass = d.min_ratio > 0.01 && d.slope > 1e-3 && d.euler_a > 0.0 && d.sturm_pass &&
           tail_bound_ok;
  c.with("t0", t0).with("min_G_over_t", d.min_ratio).with("dG_2.5", d.slope)
      .with("euler_exponent", kEulerPlus).with("euler_A", d.euler_a)
      .with("euler_comparison", d.sturm_pass ? 1.0 : 0.0);
  return c;
}

}  // namespace

Certificate verify_l1_growth(const GroundStateProfile& profile, double t0,
                             const PipelineConfig& cfg) {
  if (!(t0 >= 0.2 - 1e-12 && t0 <= 1.5 + 1e-12)) {
    throw std::invalid_argument("verify_l1_growth: t0 outside [0.2, 1.5]");
  }
  const auto bounds = certify_Q_bounds(profile, cfg.bounds);
  const bool tail_ok = find_cert(bounds, "Q.bound.centrifugal_l1.tail").pass;
  return growth_certificate(growth_data(profile, t0, cfg.tol), t0, tail_ok);
}

std::vector<Certificate> verify_l1(const GroundStateProfile& profile, const PipelineConfig& cfg) {
  for (double l : cfg.lambda_grid) {
    if (!(l > 0.0 && l <= 1.0)) throw std::invalid_argument("verify_l1: lambda outside (0, 1]");
  }
  const auto bounds = certify_Q_bounds(profile, cfg.bounds);
  const auto& origin = find_cert(bounds, "Q.bound.centrifugal_l1.origin");
  const auto& mid = find_cert(bounds, "Q.bound.centrifugal_l1.mid");
  const auto& tail = find_cert(bounds, "Q.bound.centrifugal_l1.tail");

  Certificate before{"Lplus.l1.no_zero_before_0.2",
                     "on (0, 0.2] 2/t^2 >= 3Q^2 and 1 - lambda >= 0, so V >= 0 and F > 0"};
  Certificate sign{"Lplus.l1.sign_change", "F_lambda changes sign at least once"};
  Certificate first{"Lplus.l1.first_zero_ge_0.2", "first positive zero t0 of F_lambda satisfies t0 >= 0.2"};
  Certificate after{"Lplus.l1.no_second_zero",
                    "past its first zero F_lambda keeps one sign: -F(t) / (|F'(t0)| (t - t0)) > 0"};
  before.pass = origin.pass;
  sign.pass = first.pass = after.pass = true;
  before.margin = sign.margin = first.margin = after.margin = std::numeric_limits<double>::infinity();

  std::vector<double> zeros;
  for (double lambda : cfg.lambda_grid) {
    const EffectivePotential v{Operator::Lplus, 1, lambda, 0.0, false, &profile};
    const Trajectory traj = integrate(v, launch_at_origin(v, cfg.launch_t), cfg.horizon, cfg.tol);
    const std::string tag = "[" + fixed(lambda) + "]";

    const double pre =
        detail::sample_min(traj, 0.0, 0.2, [](double t, double y) { return y / (t * t); }).value;
    before.margin = std::min(before.margin, pre);
    before.with("min_F_over_t2" + tag, pre);

    const ZeroReport z = first_positive_zero(traj, 0.0, kZeroTol);
    if (!z.found) {
      sign.pass = first.pass = after.pass = false;
      sign.margin = 0.0;
      sign.with("t_star" + tag, std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    zeros.push_back(z.t_star);
    sign.margin = std::min(sign.margin, cfg.horizon - z.t_star);
    sign.with("t_star" + tag, z.t_star);
    first.margin = std::min(first.margin, z.t_star - 0.2);

    const double dz = std::abs(traj.slope(z.t_star));
    const double ts = z.t_star;
    const double post = detail::sample_min(traj, ts + 1e-6, cfg.horizon, [&](double t, double y) {
                          return -y / (dz * (t - ts));
                        }).value;
    after.margin = std::min(after.margin, post);
  }
  before.pass = before.pass && before.margin > 0.0;
  sign.pass = sign.pass && sign.margin > 0.0;
  first.pass = first.pass && first.margin > 0.0;
  after.pass = after.pass && after.margin > 0.0;
  const bool monotone = std::is_sorted(zeros.rbegin(), zeros.rend());
  sign.with("decreasing_in_lambda", monotone ? 1.0 : 0.0);
  sign.notes = "monotonicity in lambda is an observation, not part of the claim";
  first.with("origin_bound_margin", origin.margin);

  // Kernel direction at lambda = 0: -t Q'(t), positive, no zero.
  Trajectory kernel_traj;
  const double dev = detail::lplus_l1_kernel_deviation(profile, cfg, &kernel_traj);
  Certificate kernel{"Lplus.l1.kernel", "at lambda = 0 the l = 1 solution is proportional to -t Q'(t)"};
  kernel.margin = 1e-5 - dev;
  kernel.pass = kernel.margin > 0.0;
  kernel.with("max_relative_deviation", dev).with("range_lo", 0.1).with("range_hi", 10.0);
  const ZeroReport kz = first_positive_zero(kernel_traj, 0.0, kZeroTol);
  kernel.with("zero_on_horizon", kz.found ? kz.t_star : 0.0);

  // Post-zero growth across the shift grid.
  const auto grid = t0_grid(cfg);
  Certificate growth{"Lplus.l1.post_zero_growth",
                     "for t0 in [0.2, 1.5] the shifted minorant G is positive on (0, 2.5] with "
                     "G'(2.5) > 0 and grows beyond"};
  growth.pass = tail.pass;
  std::vector<double> margins;
  double worst_t0 = grid.front(), min_ratio = 1e300, min_slope = 1e300, min_a = 1e300;
  for (double t0 : grid) {
    const GrowthData d = growth_data(profile, t0, cfg.tol);
    const Certificate c = growth_certificate(d, t0, tail.pass);
    growth.pass = growth.pass && c.pass;
    if (margins.empty() || d.margin < *std::min_element(margins.begin(), margins.end())) {
      worst_t0 = t0;
    }
    margins.push_back(d.margin);
    min_ratio = std::min(min_ratio, d.min_ratio);
    min_slope = std::min(min_slope, d.slope);
    min_a = std::min(min_a, d.euler_a);
  }
  double sensitivity = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    sensitivity = std::max(sensitivity, std::abs(margins[i] - margins[i - 1]) / (grid[i] - grid[i - 1]));
  }
  growth.margin = *std::min_element(margins.begin(), margins.end());
  const double spacing = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  const bool covered = growth.margin > sensitivity * 0.5 * spacing;
  growth.pass = growth.pass && covered && growth.margin > 0.0;
  growth.with("worst_t0", worst_t0).with("min_G_over_t", min_ratio).with("min_dG_2.5", min_slope)
      .with("min_euler_A", min_a).with("t0_points", static_cast<double>(grid.size()))
      .with("t0_spacing", spacing).with("lipschitz_sensitivity", sensitivity);
  growth.notes = "margin = min(min G/t - 0.01, G'(2.5) - 1e-3); between-grid shifts covered when "
                 "margin > sensitivity * spacing / 2";
  if (!covered) mark_failed(growth, "margin below the between-grid sensitivity budget");

  Certificate beyond{"Lplus.l1.shift_beyond_1.5",
                     "for t0 >= 1.5 the shifted potential 2/(t+t0)^2 - 3Q(t+t0)^2 is positive, so "
                     "G grows"};
  beyond.margin = std::min(mid.margin, tail.margin);
  beyond.pass = mid.pass && tail.pass && beyond.margin > 0.0;
  beyond.with("margin_1.5_2.5", mid.margin).with("scaled_margin_tail", tail.margin);

  return {before, sign, first, after, kernel, growth, beyond};
}

NegativeEigenvalue find_negative_eigenvalue(const GroundStateProfile& profile,
                                            const PipelineConfig& cfg) {
  constexpr double kEnd = 12.0;
  auto trial = [&](double eps0, bool estimate) {
    const Potential v = [&profile, eps0](double t) {
      const double q = eval_Q(profile, t);
      return 1.0 + eps0 - 3.0 * q * q;
    };
    IntegrateOptions o;
    o.estimate_error = estimate;
    return integrate(v, {0.0, 0.0, 1.0}, kEnd, cfg.tol, o);
  };
  auto changes_sign = [&](double eps0) {
    return first_positive_zero(trial(eps0, false), 0.0, kZeroTol).found;
  };

  double lo = 0.0, hi = 60.0;
  if (!changes_sign(lo) || changes_sign(hi)) {
    throw BracketError("negative eigenvalue: [0, 60] does not bracket the transition");
  }
  for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (changes_sign(mid) ? lo : hi) = mid;
  }
  NegativeEigenvalue out;
  out.eps0 = 0.5 * (lo + hi);

  const Trajectory g = trial(out.eps0, true);
  const double kappa = std::sqrt(1.0 + out.eps0);
  // The growing mode e^{+kappa t} swamps the eigenfunction once
  // e^{2 kappa t} times the bisection resolution reaches O(1); keep well inside.
  const double trusted = std::min(kEnd, 12.0 / kappa);
  const auto positive =
      detail::sample_min(g, 0.0, trusted, [](double, double y) { return y; });
  const double fit_a = 0.5 * trusted, fit_b = 0.75 * trusted;
  const double rate = (std::log(g.value(fit_b)) - std::log(g.value(fit_a))) / (fit_b - fit_a);
  const double rate_error = std::abs(rate + kappa) / kappa;
  const bool above = !changes_sign(out.eps0 + 0.1);
  const bool below = changes_sign(out.eps0 - 0.1);

  Certificate& c = out.cert;
  c.id = "Lplus.l0.negative_eigenvalue";
  c.anchor = "L+ has a negative eigenvalue -eps0 whose radial eigenfunction is positive and decays like "
             "e^{-sqrt(1+eps0) t}";
  c.margin = out.eps0;
  c.pass = out.eps0 > 0.0 && positive.value > 0.0 && rate_error < 0.05 && above && below;
  c.with("eps0", out.eps0)
      .with("bracket_width", hi - lo)
      .with("trusted_range", trusted)
      .with("min_G_on_trusted_range", positive.value)
      .with("decay_rate", rate).with("expected_rate", -kappa).with("rate_relative_error", rate_error)
      .with("eps0_plus_0.1_positive", above ? 1.0 : 0.0)
      .with("eps0_minus_0.1_sign_change", below ? 1.0 : 0.0);
  return out;
}

}  // namespace gapcert
