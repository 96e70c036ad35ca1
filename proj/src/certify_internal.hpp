#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gapcert/bessel.hpp"
#include "gapcert/certificate.hpp"
#include "gapcert/certify.hpp"
#include "gapcert/radialode.hpp"

namespace gapcert::detail {

inline const Certificate& find_cert(const std::vector<Certificate>& certs,
                                    std::string_view id) {
  for (const auto& c : certs) {
    if (c.id == id) return c;
  }
  throw std::logic_error("missing certificate " + std::string(id));
}

inline std::string fixed(double v, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Samples a Bessel mode on [a, b] as a trajectory for the comparison engine.
inline Trajectory sample_mode(const bessel::BesselMode& m, double a, double b,
                              double h) {
  const auto n = static_cast<std::size_t>(std::ceil((b - a) / h));
  std::vector<double> t(n + 1), f(n + 1), df(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    t[i] = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    f[i] = m.value(t[i]);
    df[i] = m.derivative(t[i]);
  }
  return Trajectory(std::move(t), std::move(f), std::move(df));
}

struct SampleMin {
  double value = std::numeric_limits<double>::infinity();
  double at = 0.0;
};

/// Minimum of g(t, F(t)) over the trajectory samples with a < t <= b.
template <typename G>
SampleMin sample_min(const Trajectory& traj, double a, double b, G&& g) {
  SampleMin out;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times()[i];
    if (t <= a || t > b) continue;
    const double v = g(t, traj.values()[i]);
    if (v < out.value) {
      out.value = v;
      out.at = t;
    }
  }
  return out;
}

/// Relative deviation on [0.1, 10] of the L+ l = 1 lambda = 0 launch from
/// -t Q'(t); optionally hands back the trajectory.
double lplus_l1_kernel_deviation(const GroundStateProfile& profile,
                                 const PipelineConfig& cfg, Trajectory* traj_out);

}  // namespace gapcert::detail
