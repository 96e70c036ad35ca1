#include "gapcert/radialode.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "gapcert/hermite.hpp"

namespace gapcert {

const char* to_string(Operator op) {
  return op == Operator::Lplus ? "lplus" : "lminus";
}

double coupling(Operator op) { return op == Operator::Lplus ? 3.0 : 1.0; }

double eval_potential(const EffectivePotential& v, double t) {
  if (v.profile == nullptr) throw std::invalid_argument("eval_potential: no profile");
  const double r = t + v.shift;
  if (t < 0.0 || r < 0.0 || (r == 0.0 && v.degree > 0)) {
    throw std::invalid_argument("eval_potential: radius out of range");
  }
  const double q = eval_Q(*v.profile, r);
  double out = -coupling(v.op) * q * q;
  if (!v.drop_constant) out += 1.0 - v.lambda;
  if (v.degree > 0) out += v.degree * (v.degree + 1.0) / (r * r);
  return out;
}

Potential as_function(const EffectivePotential& v) {
  return [v](double t) { return eval_potential(v, t); };
}

OdeState launch_at_origin(const EffectivePotential& v, double t_start, double sign) {
  if (v.profile == nullptr) throw std::invalid_argument("launch_at_origin: no profile");
  if (v.degree >= 2 || v.degree < 0) {
    throw std::invalid_argument("launch_at_origin: only l = 0 and l = 1 are integrated");
  }
  if (v.shift != 0.0 || v.drop_constant) {
    throw std::invalid_argument("launch_at_origin: needs an unshifted potential");
  }
  if (v.degree == 0) return {0.0, 0.0, sign >= 0.0 ? 1.0 : -1.0};
  if (!(t_start > 0.0 && t_start <= 0.05)) {
    throw std::invalid_argument("launch_at_origin: t_start must lie in (0, 0.05]");
  }
  const double b = v.profile->shoot_param;
  const double c4 = (1.0 - v.lambda - coupling(v.op) * b * b) / 10.0;
  const double t = t_start;
  return {t, t * t + c4 * t * t * t * t, 2.0 * t + 4.0 * c4 * t * t * t};
}

Trajectory::Trajectory(std::vector<double> t, std::vector<double> values,
                       std::vector<double> slopes, double error_estimate)
    : t_(std::move(t)), f_(std::move(values)), df_(std::move(slopes)),
      error_(error_estimate) {
  if (t_.size() < 2 || f_.size() != t_.size() || df_.size() != t_.size()) {
    throw std::invalid_argument("Trajectory: need at least two matching samples");
  }
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1])) throw std::invalid_argument("Trajectory: times not increasing");
  }
}

Trajectory::Trajectory(std::vector<double> t, std::vector<double> values,
                       std::vector<double> slopes, std::vector<double> curvatures,
                       double error_estimate)
    : Trajectory(std::move(t), std::move(values), std::move(slopes), error_estimate) {
  if (curvatures.size() != t_.size()) {
    throw std::invalid_argument("Trajectory: curvature count does not match");
  }
  ddf_ = std::move(curvatures);
}

bool Trajectory::covers(double a, double b) const {
  return !t_.empty() && a >= t_.front() && b <= t_.back();
}

double Trajectory::value(double t) const {
  if (!covers(t, t)) throw std::out_of_range("Trajectory: t outside samples");
  if (!ddf_.empty()) return hermite_eval(t_, f_, df_, ddf_, t).value;
  return hermite_eval(t_, f_, df_, t).value;
}

double Trajectory::slope(double t) const {
  if (!covers(t, t)) throw std::out_of_range("Trajectory: t outside samples");
  if (!ddf_.empty()) return hermite_eval(t_, f_, df_, ddf_, t).slope;
  return hermite_eval(t_, f_, df_, t).slope;
}

namespace {

Dopri5Stepper linear_stepper(const Potential& v, OdeState init, double tol,
                             double max_step) {
  StepperOptions so;
  so.rtol = tol;
  so.atol = tol;
  so.max_step = max_step;
  so.initial_step = std::min(1e-4, max_step);
  if (init.t > 0.0) so.initial_step = std::min(so.initial_step, 0.1 * init.t);
  return Dopri5Stepper([&v](double t, double y, double) { return v(t) * y; }, init, so);
}

Trajectory run(const Potential& v, OdeState init, double t_end, double tol,
               double max_step) {
  auto st = linear_stepper(v, init, tol, max_step);

  std::vector<double> t{init.t}, f{init.y}, df{init.dy}, ddf{v(init.t) * init.y};
  while (st.state().t < t_end) {
    st.step(t_end);
    t.push_back(st.state().t);
    f.push_back(st.state().y);
    df.push_back(st.state().dy);
    ddf.push_back(v(st.state().t) * st.state().y);
  }
  return Trajectory(std::move(t), std::move(f), std::move(df), std::move(ddf));
}

}  // namespace

Trajectory integrate(const Potential& v, OdeState init, double t_end, double tol,
                     const IntegrateOptions& opts) {
  if (!(init.t < t_end)) throw std::invalid_argument("integrate: need init.t < t_end");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  Trajectory main = run(v, init, t_end, tol, opts.max_step);
  if (!opts.estimate_error) return main;

  // Rerun at half tolerance, landing on the same knots so the comparison
  // carries no interpolation error.
  auto st = linear_stepper(v, init, 0.5 * tol, opts.max_step);
  double diff = 0.0;
  for (std::size_t i = 1; i < main.size(); ++i) {
    st.advance_to(main.times()[i]);
    diff = std::max(diff, std::abs(st.state().y - main.values()[i]));
  }
  std::vector<double> t = main.times(), f = main.values(), df = main.slopes(),
                      ddf = main.curvatures();
  return Trajectory(std::move(t), std::move(f), std::move(df), std::move(ddf), 2.0 * diff);
}

Trajectory integrate(const EffectivePotential& v, OdeState init, double t_end,
                     double tol, const IntegrateOptions& opts) {
  return integrate(as_function(v), init, t_end, tol, opts);
}

ZeroReport first_positive_zero(const Trajectory& traj, double after, double tol) {
  ZeroReport rep;
  rep.tolerance = tol;
  const auto& t = traj.times();
  const auto& f = traj.values();

  std::size_t prev = t.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= after || f[i] == 0.0) continue;
    if (prev < t.size() && (f[prev] > 0.0) != (f[i] > 0.0)) {
      double lo = t[prev], hi = t[i];
      const bool lo_positive = f[prev] > 0.0;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double v = traj.value(mid);
        if (v == 0.0) {
          lo = hi = mid;
          break;
        }
        ((v > 0.0) == lo_positive ? lo : hi) = mid;
      }
      rep.found = true;
      rep.t_lo = lo;
      rep.t_hi = hi;
      rep.t_star = 0.5 * (lo + hi);
      return rep;
    }
    prev = i;
  }
  return rep;
}

AsymptoticFit fit_asymptotics(const Trajectory& traj, double from, double to) {
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times()[i];
    if (t < from || t > to) continue;
    idx.push_back(i);
    const double a = t * t, b = 1.0 / t, y = traj.values()[i];
    s11 += a * a;
    s12 += a * b;
    s22 += b * b;
    r1 += a * y;
    r2 += b * y;
  }
  if (idx.size() < 5) throw std::invalid_argument("fit_asymptotics: window has fewer than 5 samples");
  const double det = s11 * s22 - s12 * s12;
  AsymptoticFit fit;
  fit.c1 = (r1 * s22 - r2 * s12) / det;
  fit.c2 = (s11 * r2 - s12 * r1) / det;
  double dev = 0.0, scale = 0.0;
  for (std::size_t i : idx) {
    const double t = traj.times()[i], y = traj.values()[i];
    dev = std::max(dev, std::abs(y - fit.c1 * t * t - fit.c2 / t));
    scale = std::max(scale, std::abs(y));
  }
  fit.residual = scale > 0.0 ? dev / scale : dev;
  return fit;
}

double wronskian(const Trajectory& a, const Trajectory& b, double t) {
  return a.value(t) * b.slope(t) - b.value(t) * a.slope(t);
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,F,dF\n" << std::setprecision(17);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << traj.times()[i] << ',' << traj.values()[i] << ',' << traj.slopes()[i] << '\n';
  }
}

}  // namespace gapcert
