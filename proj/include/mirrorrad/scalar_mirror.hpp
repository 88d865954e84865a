#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "mirrorrad/beta.hpp"
#include "mirrorrad/common.hpp"
#include "mirrorrad/quadrature.hpp"
#include "mirrorrad/specfun.hpp"
#include "mirrorrad/trajectory.hpp"

namespace mirrorrad {

/// Barton-Calogeracos-Nicolaevici mirror: r(w) = -i a/(w + i a),
/// s(w) = w/(w + i a). Unitary for every w > 0; perfect reflector at low
/// frequency, transparent at high frequency.
struct ScatterCoefficients {
  double alpha = 0.0;

  Complex reflection(double w) const {
    if (alpha == 0.0) return Complex{0.0, 0.0};
    return Complex{0.0, -alpha} / Complex{w, alpha};
  }

  Complex transmission(double w) const {
    return Complex{w, 0.0} / Complex{w, alpha};
  }
};

inline std::pair<Complex, Complex> scatter(double alpha, double w) {
  if (!(w > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("scatter: requires w > 0 and alpha >= 0");
  }
  ScatterCoefficients sc{alpha};
  return {sc.reflection(w), sc.transmission(w)};
}

namespace detail {

/// int_0^{1-A} (1-s)^{i c - p} e^{-i b s} ds, evaluated after 1-s = e^{-t}
/// so the phase rate stays bounded by c + b all the way to the A ~ e^{-k u0}
/// endpoint (in s-space the local rate blows up like c/(1-s)).
inline IntegralResult collapse_phase_integral(double c, double b, double ku0,
                                              double p,
                                              const QuadratureConfig& cfg) {
  const double aexp = 1.0 - p;  // modulus decays like e^{-aexp t}
  const double t_needed = std::log(4.0 / cfg.abs_tol) / aexp;
  const double t_cut = std::min(ku0, t_needed);
  auto f = [=](double t) {
    const double phase = -c * t - b * (-std::expm1(-t));
    return std::exp(-aexp * t) * std::exp(Complex{0.0, phase});
  };
  QuadratureConfig qc = cfg;
  qc.oscillation_rate = c + b;
  IntegralResult res = integrate(f, 0.0, t_cut, qc);
  if (t_cut < ku0) {
    res.err_estimate += std::exp(-aexp * t_cut) / aexp;  // dropped amplitude
  }
  return res;
}

/// Transmitted-mode inner integral int_0^m (s+1-m)^{osc_i - aexp + ...}
/// pattern: int_0^m (s+1-m)^{i osc} (s+1-m)^{aexp-1} e^{-q s} ds with the
/// base log-substituted (base = e^{-sigma}) so the phase rate is the
/// constant osc. aexp = 1 for the scalar mode ((...)^{2 i w/k}), 1/2 for
/// the fermionic one ((...)^{2 i w/k - 1/2}).
inline IntegralResult trans_mode_integral(double m, double osc, double aexp,
                                          double q,
                                          const QuadratureConfig& cfg) {
  if (m <= 0.0) return {};
  const double L = -std::log1p(-m);
  double cut = std::min(L, std::log(4.0 / cfg.abs_tol) / aexp);
  // e^{-q(e^{-sigma}-(1-m))} suppresses everything below sigma_lo when q is
  // large (strongly reflecting mirror); skip the dead stretch.
  double lo = 0.0;
  if (q > 0.0) {
    const double floor_base = (1.0 - m) + 40.0 / q;
    if (floor_base < 1.0) lo = -std::log(floor_base);
  }
  if (lo >= cut) cut = std::min(L, lo + 1.0 / std::max(1.0, q));
  auto f = [=](double sigma) {
    const double es = std::exp(-sigma);
    const double amp = std::exp(-aexp * sigma - q * (es - (1.0 - m)));
    return amp * std::exp(Complex{0.0, -osc * sigma});
  };
  QuadratureConfig qc = cfg;
  qc.oscillation_rate = osc + q * std::exp(-lo);
  IntegralResult res = integrate(f, lo, cut, qc);
  if (cut < L) {
    // Dropped s in [0, e^{-cut}-(1-m)]; integrand modulus there is <= 1 in
    // the scalar case and <= (s+1-m)^{-1/2} in the fermionic one.
    res.err_estimate += 2.0 * std::exp(-aexp * cut) / aexp;
  }
  return res;
}

/// Reflected scalar-mode inner integral
/// int_0^m e^{i cph (s+1-m)^2} e^{-q s} ds, direct in s (phase rate <= 2 cph).
inline IntegralResult refl_mode_integral_scalar(double m, double cph, double q,
                                                const QuadratureConfig& cfg) {
  if (m <= 0.0) return {};
  // e^{-q s}: nothing survives past s ~ 40/q.
  const double hi = (q > 0.0) ? std::min(m, 40.0 / q) : m;
  auto f = [=](double s) {
    const double base = s + 1.0 - m;
    return std::exp(-q * s) * std::exp(Complex{0.0, cph * base * base});
  };
  QuadratureConfig qc = cfg;
  qc.oscillation_rate = 2.0 * std::abs(cph) + q;
  return integrate(f, 0.0, hi, qc);
}

}  // namespace detail

struct ModeValue {
  Complex value{0.0, 0.0};
  double err_estimate = 0.0;
  QuadStatus status = QuadStatus::Ok;
};

/// phi^refl for the semi-transparent mirror, right-hand side, evaluated on
/// the three trajectory branches exactly as the mode display reads. The
/// third-branch quadratic phase uses w/k for consistency with the middle
/// branch; paper_literal = true switches to the w/4 variant of the printed
/// display for comparison.
inline ModeValue mode_refl_scalar(const CollapseTrajectory& traj, double alpha,
                                  double omega, double u,
                                  const QuadratureConfig& cfg = {},
                                  bool paper_literal = false) {
  if (!(omega > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("mode_refl_scalar: requires omega > 0, alpha >= 0");
  }
  const double k = traj.k();
  const double norm = 1.0 / std::sqrt(4.0 * pi * omega);
  const Complex r_w = Complex{0.0, -alpha} / Complex{omega, alpha};
  ModeValue out;
  if (alpha == 0.0) return out;

  if (u <= 0.0) {
    out.value = norm * r_w * std::exp(Complex{0.0, -omega * traj.ray_advance(u)});
    return out;
  }

  const double ubar = traj.comoving_u(u);
  const double q = 2.0 * alpha / k;
  if (traj.is_finite() && u >= traj.u0()) {
    const double A = traj.final_slope();
    const double sqrtA = std::sqrt(A);
    const double ubar0 = traj.ubar_end();
    const double m0 = k * ubar0 / 2.0;
    const double cph = paper_literal ? omega / 4.0 : omega / k;
    IntegralResult inner =
        detail::refl_mode_integral_scalar(m0, cph, q, cfg.inner());
    const double decay = std::exp(-alpha * (ubar - ubar0));
    out.value =
        norm * r_w * std::exp(-alpha * ubar) -
        norm * (Complex{0.0, alpha} / Complex{sqrtA * omega, alpha}) *
            (std::exp(Complex{0.0, -omega * traj.ray_advance(u)}) -
             std::exp(Complex{0.0, -omega * traj.v_end()}) * decay) -
        (2.0 * alpha / k) * norm * std::exp(Complex{0.0, -omega / k}) * decay *
            inner.value;
    out.err_estimate = (2.0 * alpha / k) * norm * decay * inner.err_estimate;
    out.status = inner.status;
    return out;
  }

  const double m = k * ubar / 2.0;
  IntegralResult inner =
      detail::refl_mode_integral_scalar(m, omega / k, q, cfg.inner());
  out.value = norm * r_w * std::exp(-alpha * ubar) -
              (2.0 * alpha / k) * norm * std::exp(Complex{0.0, -omega / k}) *
                  inner.value;
  out.err_estimate = (2.0 * alpha / k) * norm * inner.err_estimate;
  out.status = inner.status;
  return out;
}

/// phi^trans for the semi-transparent mirror, right-hand side.
inline ModeValue mode_trans_scalar(const CollapseTrajectory& traj, double alpha,
                                   double omega, double u,
                                   const QuadratureConfig& cfg = {}) {
  if (!(omega > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("mode_trans_scalar: requires omega > 0, alpha >= 0");
  }
  const double k = traj.k();
  const double norm = 1.0 / std::sqrt(4.0 * pi * omega);
  const Complex r_w = Complex{0.0, -alpha} / Complex{omega, alpha};
  ModeValue out;

  if (u <= 0.0) {
    out.value = norm * (omega / Complex{omega, alpha}) *
                std::exp(Complex{0.0, -omega * traj.ray_advance(u)});
    return out;
  }

  const double ubar = traj.comoving_u(u);
  const double q = 2.0 * alpha / k;
  const double osc = 2.0 * omega / k;
  if (traj.is_finite() && u >= traj.u0()) {
    const double A = traj.final_slope();
    const double sqrtA = std::sqrt(A);
    const double ubar0 = traj.ubar_end();
    const double m0 = k * ubar0 / 2.0;
    IntegralResult inner =
        detail::trans_mode_integral(m0, osc, 1.0, q, cfg.inner());
    const double du_bar = ubar - ubar0;
    out.value =
        norm * r_w * std::exp(-alpha * ubar) +
        norm * std::exp(Complex{0.0, -omega * traj.u0()}) /
            Complex{omega, alpha * sqrtA} *
            (omega * std::exp(Complex{0.0, -(omega / sqrtA) * du_bar}) +
             Complex{0.0, alpha * sqrtA} * std::exp(-alpha * du_bar)) -
        (2.0 * alpha / k) * norm * std::exp(-alpha * du_bar) * inner.value;
    out.err_estimate = (2.0 * alpha / k) * norm * inner.err_estimate;
    out.status = inner.status;
    return out;
  }

  const double m = k * ubar / 2.0;
  IntegralResult inner = detail::trans_mode_integral(m, osc, 1.0, q, cfg.inner());
  out.value = norm * std::exp(Complex{0.0, -omega * u}) +
              norm * r_w * std::exp(-alpha * ubar) -
              (2.0 * alpha / k) * norm * inner.value;
  out.err_estimate = (2.0 * alpha / k) * norm * inner.err_estimate;
  out.status = inner.status;
  return out;
}

/// Perfect-mirror scalar beta^{R,R}: the two boundary terms plus the
/// oscillatory core, evaluated without any regime approximation.
inline BetaCoefficient beta_rr_perfect_numeric(const CollapseTrajectory& traj,
                                               double omega, double omega_prime,
                                               const QuadratureConfig& cfg = {}) {
  if (!(omega > 0.0) || !(omega_prime > 0.0)) {
    throw DomainError("beta_rr_perfect_numeric: requires omega, omega' > 0");
  }
  if (!traj.is_finite()) {
    throw DomainError("beta_rr_perfect_numeric: finite-collapse trajectory only");
  }
  const double k = traj.k();
  const double u0 = traj.u0();
  const double A = traj.final_slope();
  const double c = omega / k;
  const double b = omega_prime / k;

  IntegralResult core = detail::collapse_phase_integral(c, b, k * u0, 0.0, cfg);

  const Complex pref = Complex{0.0, -1.0} / (2.0 * pi * std::sqrt(omega * omega_prime));
  const Complex boundary1 = pref * (omega_prime / (omega + omega_prime));
  const Complex boundary2 =
      -pref * std::exp(Complex{0.0, -(omega * u0 + omega_prime * traj.v_end())}) *
      (omega_prime * A / (omega + omega_prime * A));
  const double core_pref = std::sqrt(omega_prime / omega) / (2.0 * pi * k);

  BetaCoefficient beta;
  beta.value = boundary1 + boundary2 - core_pref * core.value;
  beta.channel = Channel::RR;
  beta.method = Method::Numeric;
  beta.err_estimate = core_pref * core.err_estimate;
  beta.quad_status = core.status;
  beta.params = {k, u0, std::numeric_limits<double>::infinity(), omega, omega_prime};
  detail::guard_validity_window(beta, k, u0, omega, omega_prime);
  beta.regime_ok = true;  // numeric evaluation has no regime precondition
  return beta;
}

/// |beta^{R,R}|^2 thermal closed form, perfect mirror (Planck factor).
inline double beta_sq_perfect_thermal(double k, double omega,
                                      double omega_prime) {
  return bose_factor(2.0 * pi * omega / k) / (2.0 * pi * omega_prime * k);
}

/// Perfect-mirror closed-form beta, valid for 1 << w'/k and 1 << w'/w.
inline BetaCoefficient beta_rr_perfect_asymptotic(double k, double omega,
                                                  double omega_prime) {
  if (!(k > 0.0) || !(omega > 0.0) || !(omega_prime > 0.0)) {
    throw DomainError("beta_rr_perfect_asymptotic: requires positive k, omega, omega'");
  }
  const double c = omega / k;
  BetaCoefficient beta;
  beta.value = Complex{0.0, -1.0} / (2.0 * pi * std::sqrt(omega * omega_prime)) *
               std::exp(Complex{0.0, -omega_prime / k}) *
               imaginary_power(k / omega_prime, c, 0.0) *
               std::exp(log_gamma(Complex{1.0, c}));
  beta.channel = Channel::RR;
  beta.method = Method::Asymptotic;
  beta.params = {k, std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity(), omega, omega_prime};
  if (omega_prime / k < 10.0 || omega_prime / omega < 10.0) {
    beta.regime_ok = false;
    beta.warnings.push_back(
        "RegimeWarning: closed form assumes 1 << omega'/k and 1 << omega'/omega");
  }
  return beta;
}

/// Semi-transparent scalar beta^{R,R}: the nested-integral expression with
/// the outer x-integral log-substituted (x = e^{-tau}) so both the x^{-1/2}
/// amplitude and the x^{i w/k} phase stay tame down to x = A.
inline BetaCoefficient beta_rr_semi_numeric(const CollapseTrajectory& traj,
                                            double alpha, double omega,
                                            double omega_prime,
                                            const QuadratureConfig& cfg = {}) {
  if (!(omega > 0.0) || !(omega_prime > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("beta_rr_semi_numeric: requires omega, omega' > 0, alpha >= 0");
  }
  if (!traj.is_finite()) {
    throw DomainError("beta_rr_semi_numeric: finite-collapse trajectory only");
  }
  const double k = traj.k();
  const double u0 = traj.u0();
  BetaCoefficient beta;
  beta.channel = Channel::RR;
  beta.method = Method::Numeric;
  beta.params = {k, u0, alpha, omega, omega_prime};
  detail::guard_validity_window(beta, k, u0, omega, omega_prime);
  beta.regime_ok = true;
  if (alpha == 0.0) return beta;  // transparent mirror: exactly zero

  if (omega_prime / k > 1e6) {
    beta.quad_status = QuadStatus::SubdivisionLimit;
    beta.warnings.push_back(
        "omega'/k > 1e6 exceeds the documented operational ceiling");
    return beta;
  }

  const double c = omega / k;
  const double b = omega_prime / k;
  const double q = 2.0 * alpha / k;
  const double ku0 = k * u0;
  const double tau_cut = std::min(ku0, 2.0 * std::log(4.0 / cfg.abs_tol));

  QuadratureConfig outer_cfg = cfg;
  outer_cfg.oscillation_rate = c + b;
  const QuadratureConfig inner_cfg = cfg.inner();

  // bracket A: 1 - (alpha/k) int_A^1 x^{ic-1/2} e^{-2 alpha (1-sqrt x)/k} dx
  // The e^{-q(1-sqrt x)} factor confines everything to a tau ~ 1/q layer
  // when the mirror is strongly reflecting.
  double fa_cut = tau_cut;
  if (q > 0.0 && 40.0 / q < 1.0) {
    fa_cut = std::min(tau_cut, -2.0 * std::log1p(-40.0 / q));
  }
  auto fa = [=](double tau) {
    const double amp = std::exp(-tau / 2.0 - q * (-std::expm1(-tau / 2.0)));
    return amp * std::exp(Complex{0.0, -c * tau});
  };
  QuadratureConfig fa_cfg = outer_cfg;
  fa_cfg.oscillation_rate = c + q / 2.0;
  IntegralResult oa = integrate(fa, 0.0, fa_cut, fa_cfg);

  // main term: int_A^1 x^{ic-1/2} e^{i b x} [1 - q J(sqrt x)] dx
  auto fb = [&](double tau) {
    const double root_x = std::exp(-tau / 2.0);
    const double x = root_x * root_x;
    auto inner = [=](double s) {
      return std::exp(Complex{0.0, b * s * (s + 2.0 * root_x)} - q * s);
    };
    QuadratureConfig qc = inner_cfg;
    qc.oscillation_rate = 2.0 * b + q;
    const double s_hi =
        (q > 0.0) ? std::min(1.0 - root_x, 40.0 / q) : 1.0 - root_x;
    const Complex j = (root_x < 1.0)
                          ? integrate(inner, 0.0, s_hi, qc).value
                          : Complex{0.0, 0.0};
    return root_x * std::exp(Complex{0.0, -c * tau + b * x}) *
           (1.0 - q * j);
  };
  // The (1 - q J) bracket collapses from ~1 to ~0 across a tau ~ 1/q layer
  // at the x = 1 end; when that layer is narrower than a seeded panel the
  // embedded estimator cannot see it, so integrate it as its own piece.
  IntegralResult ob;
  const double tau_layer = 160.0 / std::max(q, 1.0);
  if (q > 0.0 && tau_layer < 0.1 * tau_cut) {
    QuadratureConfig layer_cfg = outer_cfg;
    layer_cfg.oscillation_rate = c + b + q / 2.0;
    IntegralResult layer = integrate(fb, 0.0, tau_layer, layer_cfg);
    IntegralResult rest = integrate(fb, tau_layer, tau_cut, outer_cfg);
    ob.value = layer.value + rest.value;
    ob.err_estimate = layer.err_estimate + rest.err_estimate;
    ob.evaluations = layer.evaluations + rest.evaluations;
    ob.status = layer.ok() ? rest.status : layer.status;
  } else {
    ob = integrate(fb, 0.0, tau_cut, outer_cfg);
  }

  double trunc = 0.0;
  if (tau_cut < ku0) trunc = 4.0 * std::exp(-tau_cut / 2.0);

  const double inv_sqrt = 1.0 / std::sqrt(omega * omega_prime);
  const Complex pref_a =
      (1.0 / (2.0 * pi)) * inv_sqrt * (alpha / Complex{omega_prime, alpha});
  const Complex pref_b = alpha / (2.0 * pi * k) * inv_sqrt * Complex{0.0, -1.0} *
                         std::exp(Complex{0.0, -b});

  beta.value = pref_a * (1.0 - (alpha / k) * oa.value) + pref_b * ob.value;
  beta.err_estimate = std::abs(pref_a) * (alpha / k) * (oa.err_estimate + trunc) +
                      std::abs(pref_b) * (ob.err_estimate + 2.0 * trunc);
  beta.quad_status = (oa.ok() && ob.ok()) ? QuadStatus::Ok
                     : (!ob.ok() ? ob.status : oa.status);
  return beta;
}

/// |beta^{R,R}|^2 thermal closed form, semi-transparent mirror (Fermi factor).
inline double beta_sq_semi_thermal(double k, double alpha, double omega,
                                   double omega_prime) {
  const double ratio = alpha / omega_prime;
  return fermi_factor(2.0 * pi * omega / k) * ratio * ratio /
         (2.0 * pi * k * omega);
}

/// Semi-transparent closed-form beta (alpha << omega' regime).
inline BetaCoefficient beta_rr_semi_asymptotic(double k, double alpha,
                                               double omega,
                                               double omega_prime) {
  if (!(k > 0.0) || !(omega > 0.0) || !(omega_prime > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("beta_rr_semi_asymptotic: invalid parameters");
  }
  const double c = omega / k;
  BetaCoefficient beta;
  beta.value = alpha / (2.0 * pi * k * std::sqrt(omega * omega_prime)) *
               Complex{0.0, -1.0} * std::exp(Complex{0.0, -omega_prime / k}) *
               imaginary_power(k / omega_prime, c, 0.5) *
               std::exp(log_gamma(Complex{0.5, c}));
  beta.channel = Channel::RR;
  beta.method = Method::Asymptotic;
  beta.params = {k, std::numeric_limits<double>::infinity(), alpha, omega,
                 omega_prime};
  if (!(omega_prime >= 10.0 * alpha)) {
    beta.regime_ok = false;
    beta.warnings.push_back(
        "RegimeWarning: closed form assumes alpha << omega'");
  }
  return beta;
}

/// Semi-transparent beta^{R,L} from the mode overlap on right null future
/// infinity. The u < 0 stretch and the u > u0 stretch are pure phases plus
/// e^{-alpha sqrt(A)(u-u0)} decays, so both are folded in closed form; only
/// the accelerating stretch is integrated numerically.
inline BetaCoefficient beta_rl_semi_numeric(const CollapseTrajectory& traj,
                                            double alpha, double omega,
                                            double omega_prime,
                                            const QuadratureConfig& cfg = {}) {
  if (!(omega > 0.0) || !(omega_prime > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("beta_rl_semi_numeric: requires omega, omega' > 0, alpha >= 0");
  }
  if (!traj.is_finite()) {
    throw DomainError("beta_rl_semi_numeric: finite-collapse trajectory only");
  }
  const double k = traj.k();
  const double u0 = traj.u0();
  BetaCoefficient beta;
  beta.channel = Channel::RL;
  beta.method = Method::Numeric;
  beta.params = {k, u0, alpha, omega, omega_prime};
  detail::guard_validity_window(beta, k, u0, omega, omega_prime);
  beta.regime_ok = true;
  if (alpha == 0.0) return beta;

  const double norm_w = 1.0 / std::sqrt(4.0 * pi * omega);
  const double norm_wp = 1.0 / std::sqrt(4.0 * pi * omega_prime);
  const Complex s_wp = omega_prime / Complex{omega_prime, alpha};
  const Complex r_wp = Complex{0.0, -alpha} / Complex{omega_prime, alpha};
  const double wsum = omega + omega_prime;

  // u < 0: phi^trans is a pure transmitted phase.
  const Complex seg_neg = norm_w * norm_wp * s_wp * Complex{0.0, 1.0} / wsum;

  // 0 <= u <= u0: numeric, phi^trans carries its own inner quadrature.
  QuadratureConfig mid_cfg = cfg;
  mid_cfg.oscillation_rate = wsum;
  const QuadratureConfig mode_cfg = cfg.inner();
  double worst_mode_err = 0.0;
  QuadStatus mode_status = QuadStatus::Ok;
  auto f_mid = [&](double u) {
    ModeValue mv = mode_trans_scalar(traj, alpha, omega_prime, u, mode_cfg);
    worst_mode_err = std::max(worst_mode_err, mv.err_estimate);
    if (!((mv.status == QuadStatus::Ok))) mode_status = mv.status;
    return norm_w * std::exp(Complex{0.0, -omega * u}) * mv.value;
  };
  IntegralResult mid = integrate(f_mid, 0.0, u0, mid_cfg);

  // u > u0: constants of the third branch.
  const double A = traj.final_slope();
  const double sqrtA = std::sqrt(A);
  const double ubar0 = traj.ubar_end();
  const double m0 = k * ubar0 / 2.0;
  const double q = 2.0 * alpha / k;
  IntegralResult inner =
      detail::trans_mode_integral(m0, 2.0 * omega_prime / k, 1.0, q, cfg.inner());
  const Complex cc = std::exp(Complex{0.0, -omega_prime * u0}) /
                     Complex{omega_prime, alpha * sqrtA};
  const Complex decay_amp = r_wp * std::exp(-alpha * ubar0) +
                            cc * Complex{0.0, alpha * sqrtA} -
                            (2.0 * alpha / k) * inner.value;
  const Complex phase_amp = cc * omega_prime;
  const Complex seg_tail =
      norm_w * norm_wp * std::exp(Complex{0.0, -omega * u0}) *
      (decay_amp / Complex{alpha * sqrtA, omega} +
       phase_amp / Complex{0.0, wsum});

  beta.value = -2.0 * omega * (seg_neg + mid.value + seg_tail);
  beta.err_estimate =
      2.0 * omega * (mid.err_estimate + u0 * norm_w * worst_mode_err +
                     norm_w * norm_wp * (2.0 * alpha / k) * inner.err_estimate /
                         std::hypot(alpha * sqrtA, omega));
  beta.quad_status = mid.ok() ? mode_status : mid.status;
  return beta;
}

}  // namespace mirrorrad
