#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "mirrorrad/common.hpp"
#include "mirrorrad/quadrature.hpp"
#include "mirrorrad/scalar_mirror.hpp"
#include "mirrorrad/trajectory.hpp"

namespace mirrorrad {

/// Integrability verdicts for a mirror trajectory: condition (c) demands
/// int |V' - B1| over the past and int |V' - B2| over the future be finite
/// for some nonnegative B1, B2.
struct ConvergenceReport {
  double b1 = 1.0;
  double b2 = 0.0;
  double integral_neg = 0.0;
  double integral_pos = 0.0;
  bool asymptotically_inertial = false;
  bool condition_c = false;
  bool infrared_safe = false;
  std::vector<double> acceleration_jumps;
};

/// Closed-form classification of the two collapse variants. V' = 1 before
/// u = 0, e^{-k u} during collapse, so every integral is elementary.
inline ConvergenceReport classify(const CollapseTrajectory& traj) {
  const double k = traj.k();
  ConvergenceReport rep;
  rep.b1 = 1.0;
  rep.integral_neg = 0.0;  // V' is exactly B1 for u < 0
  rep.acceleration_jumps.push_back(0.0);
  if (traj.is_finite()) {
    const double u0 = traj.u0();
    const double A = traj.final_slope();
    rep.b2 = A;
    // int_0^{u0} (e^{-k u} - A) du; V' equals B2 beyond u0.
    rep.integral_pos = (1.0 - A) / k - u0 * A;
    rep.asymptotically_inertial = true;
    rep.condition_c = true;
    rep.infrared_safe = (u0 == 0.0);  // initial slope 1, final slope A < 1
    if (u0 > 0.0) rep.acceleration_jumps.push_back(u0);
    if (u0 == 0.0) rep.acceleration_jumps.clear();
  } else {
    rep.b2 = 0.0;
    rep.integral_pos = 1.0 / k;  // int_0^inf e^{-k u} du
    rep.asymptotically_inertial = false;  // final velocity is null, B2 = 0
    rep.condition_c = true;  // (c) allows B2 = 0 and the integral is finite
    rep.infrared_safe = false;
  }
  return rep;
}

struct DecayFit {
  double exponent = 0.0;
  double residual = 0.0;  // rms of log-log fit residuals
  bool fit_unstable = false;
  std::vector<double> omega_prime;
  std::vector<double> beta_sq;
};

struct DecayFitConfig {
  double residual_threshold = 0.25;  // rms in log units
};

/// Least-squares slope of log |beta|^2 against log omega' for an arbitrary
/// |beta|^2 source. Exposed separately so synthetic and smooth-trajectory
/// sources can reuse the fit.
inline DecayFit fit_decay_exponent(
    const std::function<double(double)>& beta_sq,
    const std::vector<double>& omega_prime_list,
    const DecayFitConfig& cfg = {}) {
  if (omega_prime_list.size() < 3) {
    throw DomainError("fit_decay_exponent: need at least 3 sample points");
  }
  DecayFit fit;
  fit.omega_prime = omega_prime_list;
  std::vector<double> lx, ly;
  for (double wp : omega_prime_list) {
    const double b2 = beta_sq(wp);
    fit.beta_sq.push_back(b2);
    if (!(b2 > 0.0)) {
      fit.fit_unstable = true;
      return fit;
    }
    lx.push_back(std::log(wp));
    ly.push_back(std::log(b2));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.exponent = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - my - fit.exponent * (lx[i] - mx);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.fit_unstable = fit.residual > cfg.residual_threshold;
  return fit;
}

/// UV decay probe over the perfect-mirror scalar pipeline: beyond the
/// thermal window the V'' jump at u = u0 dominates and |beta|^2 falls like a
/// power of omega'; the fitted exponent is the observable.
inline DecayFit uv_decay_probe(const CollapseTrajectory& traj, double omega,
                               const std::vector<double>& omega_prime_list,
                               const QuadratureConfig& qcfg = {},
                               const DecayFitConfig& cfg = {}) {
  auto beta_sq = [&](double wp) {
    return beta_rr_perfect_numeric(traj, omega, wp, qcfg).abs_sq();
  };
  return fit_decay_exponent(beta_sq, omega_prime_list, cfg);
}

}  // namespace mirrorrad
