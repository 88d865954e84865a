#pragma once

#include <cmath>
#include <limits>

#include "mirrorrad/beta.hpp"
#include "mirrorrad/common.hpp"
#include "mirrorrad/quadrature.hpp"
#include "mirrorrad/scalar_mirror.hpp"
#include "mirrorrad/specfun.hpp"
#include "mirrorrad/trajectory.hpp"

namespace mirrorrad {

/// Massless 1+1 Dirac solution psi = (F(u), G(v)): each component rides its
/// own null coordinate.
struct SpinorValue {
  Complex upper{0.0, 0.0};  // F(u)
  Complex lower{0.0, 0.0};  // G(v)
};

/// Normal component of the Dirac current on the mirror worldline,
/// proportional to V'(u)|G|^2 - |F|^2. Zero for perfectly reflecting
/// boundary modes.
inline double dirac_current_normal(const CollapseTrajectory& traj,
                                   const SpinorValue& psi, double u) {
  return traj.ray_velocity(u) * std::norm(psi.lower) - std::norm(psi.upper);
}

/// Perfect-mirror fermionic in/out modes (for boundary-condition checks).
inline SpinorValue psi_in_perfect(const CollapseTrajectory& traj, double omega,
                                  double u, double v) {
  const double vu = traj.ray_advance(u);
  if (v < vu) return {};
  SpinorValue psi;
  psi.lower = std::exp(Complex{0.0, -omega * v}) / std::sqrt(2.0 * pi);
  psi.upper = -std::sqrt(traj.ray_velocity(u) / (2.0 * pi)) *
              std::exp(Complex{0.0, -omega * vu});
  return psi;
}

inline SpinorValue psi_out_perfect(const CollapseTrajectory& traj, double omega,
                                   double u, double v) {
  const double vu = traj.ray_advance(u);
  if (v < vu) return {};
  const double uv = traj.ray_retard(v);  // U(v), slope U'(v) = 1/V'(U(v))
  SpinorValue psi;
  psi.upper = std::exp(Complex{0.0, -omega * u}) / std::sqrt(2.0 * pi);
  psi.lower = -std::sqrt(1.0 / traj.ray_velocity(uv) / (2.0 * pi)) *
              std::exp(Complex{0.0, -omega * uv});
  return psi;
}

/// Which exponent the third branch of psi^trans carries on its
/// e^{-alpha ...} piece: the printed display mixes e^{-alpha sqrt(A)
/// (ubar-ubar0)} into a formula whose scalar analogue has
/// e^{-alpha (ubar-ubar0)}; both are available.
enum class TransTailExponent { AsPrinted, ScalarConsistent };

namespace detail {

/// int_0^m sqrt(s+1-m) e^{i cph (s+1-m)^2} e^{-q s} ds with base = sigma^2,
/// which removes the sqrt-edge and keeps the phase rate at 4|cph|.
inline IntegralResult refl_mode_integral_fermion(double m, double cph, double q,
                                                 const QuadratureConfig& cfg) {
  if (m <= 0.0) return {};
  const double lo = std::sqrt(1.0 - m);
  // e^{-q(sigma^2 - lo^2)}: dead past sigma^2 ~ lo^2 + 40/q.
  const double hi =
      (q > 0.0) ? std::min(1.0, std::sqrt(lo * lo + 40.0 / q)) : 1.0;
  auto f = [=](double sigma) {
    const double s2 = sigma * sigma;
    return 2.0 * s2 *
           std::exp(Complex{-q * (s2 - (1.0 - m)), cph * s2 * s2});
  };
  QuadratureConfig qc = cfg;
  qc.oscillation_rate = 4.0 * std::abs(cph) + 2.0 * q;
  return integrate(f, lo, hi, qc);
}

}  // namespace detail

/// psi^refl upper component (lower vanishes identically).
inline ModeValue mode_refl_fermion(const CollapseTrajectory& traj, double alpha,
                                   double omega, double u,
                                   const QuadratureConfig& cfg = {}) {
  if (!(omega > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("mode_refl_fermion: requires omega > 0, alpha >= 0");
  }
  const double k = traj.k();
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  ModeValue out;
  if (alpha == 0.0) return out;

  if (u <= 0.0) {
    out.value = norm * Complex{0.0, -alpha} / Complex{omega, alpha} *
                std::exp(Complex{0.0, -omega * traj.ray_advance(u)});
    return out;
  }

  const double ubar = traj.comoving_u(u);
  const double sqrt_ubar_p = std::sqrt(std::sqrt(traj.ray_velocity(u)));
  const double q = 2.0 * alpha / k;

  if (traj.is_finite() && u >= traj.u0()) {
    const double A = traj.final_slope();
    const double sqrtA = std::sqrt(A);
    const double ubar0 = traj.ubar_end();
    const double m0 = k * ubar0 / 2.0;
    IntegralResult inner =
        detail::refl_mode_integral_fermion(m0, omega / k, q, cfg.inner());
    const double decay = std::exp(-alpha * (ubar - ubar0));
    out.value =
        norm * (Complex{0.0, -alpha} / Complex{omega, alpha}) * sqrt_ubar_p *
            std::exp(-alpha * ubar) -
        norm * (Complex{0.0, alpha} / Complex{sqrtA * omega, alpha}) *
            std::sqrt(traj.ray_velocity(u)) *
            (std::exp(Complex{0.0, -omega * traj.ray_advance(u)}) -
             std::exp(Complex{0.0, -omega * traj.v_end()}) * decay) -
        norm * (2.0 * alpha / k) * std::exp(Complex{0.0, -omega / k}) *
            sqrt_ubar_p * decay * inner.value;
    out.err_estimate =
        norm * (2.0 * alpha / k) * sqrt_ubar_p * decay * inner.err_estimate;
    out.status = inner.status;
    return out;
  }

  const double m = k * ubar / 2.0;
  IntegralResult inner =
      detail::refl_mode_integral_fermion(m, omega / k, q, cfg.inner());
  out.value = norm * (Complex{0.0, -alpha} / Complex{omega, alpha}) *
                  sqrt_ubar_p * std::exp(-alpha * ubar) -
              norm * (2.0 * alpha / k) * std::exp(Complex{0.0, -omega / k}) *
                  sqrt_ubar_p * inner.value;
  out.err_estimate =
      norm * (2.0 * alpha / k) * sqrt_ubar_p * inner.err_estimate;
  out.status = inner.status;
  return out;
}

/// psi^trans upper component.
inline ModeValue mode_trans_fermion(
    const CollapseTrajectory& traj, double alpha, double omega, double u,
    const QuadratureConfig& cfg = {},
    TransTailExponent tail = TransTailExponent::AsPrinted) {
  if (!(omega > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("mode_trans_fermion: requires omega > 0, alpha >= 0");
  }
  const double k = traj.k();
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  ModeValue out;

  if (u <= 0.0) {
    out.value = norm * (omega / Complex{omega, alpha}) *
                std::sqrt(traj.ray_velocity(u)) *
                std::exp(Complex{0.0, -omega * traj.ray_advance(u)});
    return out;
  }

  const double ubar = traj.comoving_u(u);
  const double sqrt_ubar_p = std::sqrt(std::sqrt(traj.ray_velocity(u)));
  const double q = 2.0 * alpha / k;
  const double osc = 2.0 * omega / k;

  if (traj.is_finite() && u >= traj.u0()) {
    const double A = traj.final_slope();
    const double sqrtA = std::sqrt(A);
    const double ubar0 = traj.ubar_end();
    const double m0 = k * ubar0 / 2.0;
    IntegralResult inner =
        detail::trans_mode_integral(m0, osc, 0.5, q, cfg.inner());
    const double du_bar = ubar - ubar0;
    const double bracket_rate =
        (tail == TransTailExponent::AsPrinted) ? alpha * sqrtA : alpha;
    out.value =
        norm * (Complex{0.0, -alpha} / Complex{omega, alpha}) * sqrt_ubar_p *
            std::exp(-alpha * ubar) +
        norm * std::exp(Complex{0.0, -omega * traj.u0()}) /
            Complex{omega, alpha * sqrtA} *
            (omega * std::exp(Complex{0.0, -(omega / sqrtA) * du_bar}) +
             Complex{0.0, alpha * sqrtA} * std::exp(-bracket_rate * du_bar)) -
        norm * (2.0 * alpha / k) * sqrt_ubar_p * std::exp(-alpha * du_bar) *
            inner.value;
    out.err_estimate =
        norm * (2.0 * alpha / k) * sqrt_ubar_p * inner.err_estimate;
    out.status = inner.status;
    return out;
  }

  const double m = k * ubar / 2.0;
  IntegralResult inner = detail::trans_mode_integral(m, osc, 0.5, q, cfg.inner());
  out.value = norm * (Complex{0.0, -alpha} / Complex{omega, alpha}) *
                  sqrt_ubar_p * std::exp(-alpha * ubar) +
              norm * std::exp(Complex{0.0, -omega * u}) -
              norm * (2.0 * alpha / k) * sqrt_ubar_p * inner.value;
  out.err_estimate = norm * (2.0 * alpha / k) * sqrt_ubar_p * inner.err_estimate;
  out.status = inner.status;
  return out;
}

/// Perfect-mirror fermionic beta^{R,R}: constant term plus oscillatory core
/// with the (1-s)^{-1/2} edge absorbed by the log substitution.
inline BetaCoefficient beta_rr_perfect_fermion_numeric(
    const CollapseTrajectory& traj, double omega, double omega_prime,
    const QuadratureConfig& cfg = {}) {
  if (!(omega > 0.0) || !(omega_prime > 0.0)) {
    throw DomainError("beta_rr_perfect_fermion_numeric: requires omega, omega' > 0");
  }
  if (!traj.is_finite()) {
    throw DomainError("beta_rr_perfect_fermion_numeric: finite-collapse only");
  }
  const double k = traj.k();
  const double u0 = traj.u0();
  const double c = omega / k;
  const double b = omega_prime / k;
  IntegralResult core = detail::collapse_phase_integral(c, b, k * u0, 0.5, cfg);

  BetaCoefficient beta;
  beta.value = Complex{0.0, -1.0} / (2.0 * pi * omega_prime) -
               core.value / (2.0 * pi * k);
  beta.channel = Channel::RR;
  beta.method = Method::Numeric;
  beta.err_estimate = core.err_estimate / (2.0 * pi * k);
  beta.quad_status = core.status;
  beta.params = {k, u0, std::numeric_limits<double>::infinity(), omega,
                 omega_prime};
  detail::guard_validity_window(beta, k, u0, omega, omega_prime);
  beta.regime_ok = true;
  return beta;
}

/// |beta^{R,R}|^2 thermal closed form, perfect mirror, Dirac field
/// (Fermi factor).
inline double beta_sq_perfect_fermion_thermal(double k, double omega,
                                              double omega_prime) {
  return fermi_factor(2.0 * pi * omega / k) / (2.0 * pi * omega_prime * k);
}

inline BetaCoefficient beta_rr_perfect_fermion_asymptotic(double k, double omega,
                                                          double omega_prime) {
  if (!(k > 0.0) || !(omega > 0.0) || !(omega_prime > 0.0)) {
    throw DomainError("beta_rr_perfect_fermion_asymptotic: invalid parameters");
  }
  const double c = omega / k;
  BetaCoefficient beta;
  beta.value = std::exp(Complex{0.0, -omega_prime / k}) / (2.0 * pi * k) *
               imaginary_power(k / omega_prime, c, 0.5) *
               std::exp(log_gamma(Complex{0.5, c}));
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

/// Semi-transparent fermionic beta^{R,R} as the display reads: the nested
/// integral with outer x = e^{-tau} (tames x^{-3/4} and the x^{i w/k} phase
/// together) and inner base = t^2 (tames sqrt(s+sqrt x)). The display's
/// integration by parts dropped the s-integral's upper boundary term, which
/// is not small for omega ~ k; use beta_rr_semi_fermion_numeric for the
/// exact overlap.
inline BetaCoefficient beta_rr_semi_fermion_printed(
    const CollapseTrajectory& traj, double alpha, double omega,
    double omega_prime, const QuadratureConfig& cfg = {}) {
  if (!(omega > 0.0) || !(omega_prime > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("beta_rr_semi_fermion_numeric: invalid parameters");
  }
  if (!traj.is_finite()) {
    throw DomainError("beta_rr_semi_fermion_numeric: finite-collapse only");
  }
  const double k = traj.k();
  const double u0 = traj.u0();
  BetaCoefficient beta;
  beta.channel = Channel::RR;
  beta.method = Method::Numeric;
  beta.params = {k, u0, alpha, omega, omega_prime};
  detail::guard_validity_window(beta, k, u0, omega, omega_prime);
  beta.regime_ok = true;
  if (alpha == 0.0) return beta;

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
  const double tau_cut = std::min(ku0, 4.0 * std::log(4.0 / cfg.abs_tol));

  const QuadratureConfig inner_cfg = cfg.inner();
  auto outer = [&](double tau) {
    const double root_x = std::exp(-tau / 2.0);
    const double quarter_x = std::exp(-tau / 4.0);
    auto w_inner = [=](double t) {
      const double t2 = t * t;
      return 2.0 * t2 *
             std::exp(Complex{-q * (t2 - root_x), b * t2 * t2});
    };
    QuadratureConfig qc = inner_cfg;
    qc.oscillation_rate = 4.0 * b + 2.0 * q;
    const double t_hi =
        (q > 0.0) ? std::min(1.0, std::sqrt(root_x + 40.0 / q)) : 1.0;
    const Complex w = (quarter_x < t_hi)
                          ? integrate(w_inner, quarter_x, t_hi, qc).value
                          : Complex{0.0, 0.0};
    return quarter_x * std::exp(Complex{0.0, -c * tau}) * w;
  };
  QuadratureConfig outer_cfg = cfg;
  outer_cfg.oscillation_rate = c + 4.0 * b;
  IntegralResult o = integrate(outer, 0.0, tau_cut, outer_cfg);
  double trunc = 0.0;
  if (tau_cut < ku0) trunc = (8.0 / 3.0) * std::exp(-tau_cut / 4.0);

  const Complex term1 = (1.0 / (2.0 * pi)) *
                        (alpha / Complex{omega_prime, alpha}) /
                        (omega + omega_prime);
  const Complex pref = -alpha / (k * k * pi) *
                       std::exp(Complex{0.0, -omega_prime / k});
  beta.value = term1 + pref * o.value;
  beta.err_estimate = std::abs(pref) * (o.err_estimate + trunc);
  beta.quad_status = o.status;
  return beta;
}

/// Semi-transparent fermionic beta^{R,R} as the exact spinor overlap
/// int (1/sqrt(2 pi)) e^{-i w u} F^refl_{w'}(u) du on right null future
/// infinity. The inertial stretches integrate in closed form (the u < 0 one
/// is exactly the display's first term); only the collapse stretch is
/// numeric. Unlike the printed nested integral this keeps the boundary
/// pieces that cancel between stretches, so it reproduces the Bose-factor
/// closed form.
inline BetaCoefficient beta_rr_semi_fermion_numeric(
    const CollapseTrajectory& traj, double alpha, double omega,
    double omega_prime, const QuadratureConfig& cfg = {}) {
  if (!(omega > 0.0) || !(omega_prime > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("beta_rr_semi_fermion_numeric: invalid parameters");
  }
  if (!traj.is_finite()) {
    throw DomainError("beta_rr_semi_fermion_numeric: finite-collapse only");
  }
  const double k = traj.k();
  const double u0 = traj.u0();
  BetaCoefficient beta;
  beta.channel = Channel::RR;
  beta.method = Method::Numeric;
  beta.params = {k, u0, alpha, omega, omega_prime};
  detail::guard_validity_window(beta, k, u0, omega, omega_prime);
  beta.regime_ok = true;
  if (alpha == 0.0) return beta;

  const double inv_2pi = 1.0 / (2.0 * pi);
  const double wsum = omega + omega_prime;
  const Complex r_wp =
      Complex{0.0, -alpha} / Complex{omega_prime, alpha};

  // u < 0: F^refl is a pure reflected phase.
  const Complex seg_neg = inv_2pi * r_wp * Complex{0.0, 1.0} / wsum;

  // 0 <= u <= u0.
  QuadratureConfig mid_cfg = cfg;
  mid_cfg.oscillation_rate = wsum;
  const QuadratureConfig mode_cfg = cfg.inner();
  double worst_mode_err = 0.0;
  QuadStatus mode_status = QuadStatus::Ok;
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  auto f_mid = [&](double u) {
    ModeValue mv = mode_refl_fermion(traj, alpha, omega_prime, u, mode_cfg);
    worst_mode_err = std::max(worst_mode_err, mv.err_estimate);
    if (mv.status != QuadStatus::Ok) mode_status = mv.status;
    return norm * std::exp(Complex{0.0, -omega * u}) * mv.value;
  };
  IntegralResult mid = integrate(f_mid, 0.0, u0, mid_cfg);

  // u > u0: the third branch's decays (rate alpha sqrt(A) in u) and the pure
  // reflected phase e^{-i w' V(u)} with V' = A.
  const double A = traj.final_slope();
  const double sqrtA = std::sqrt(A);
  const double quarterA = std::sqrt(sqrtA);
  const double ubar0 = traj.ubar_end();
  const double m0 = k * ubar0 / 2.0;
  const double q = 2.0 * alpha / k;
  IntegralResult inner = detail::refl_mode_integral_fermion(
      m0, omega_prime / k, q, cfg.inner());
  const Complex phase_v0 = std::exp(Complex{0.0, -omega_prime * traj.v_end()});
  const Complex mix = Complex{0.0, alpha} * sqrtA /
                      Complex{sqrtA * omega_prime, alpha};
  const Complex decay_amp =
      r_wp * quarterA * std::exp(-alpha * ubar0) + mix * phase_v0 -
      (2.0 * alpha / k) * std::exp(Complex{0.0, -omega_prime / k}) * quarterA *
          inner.value;
  const Complex phase_amp = -mix * phase_v0;
  const Complex seg_tail =
      inv_2pi * std::exp(Complex{0.0, -omega * u0}) *
      (decay_amp / Complex{alpha * sqrtA, omega} +
       phase_amp / Complex{0.0, omega + omega_prime * A});

  beta.value = seg_neg + mid.value + seg_tail;
  beta.err_estimate =
      mid.err_estimate + u0 * norm * worst_mode_err +
      inv_2pi * (2.0 * alpha / k) * quarterA * inner.err_estimate /
          std::hypot(alpha * sqrtA, omega);
  beta.quad_status = mid.ok() ? mode_status : mid.status;
  return beta;
}

/// |beta^{R,R}|^2 thermal closed form, semi-transparent mirror, Dirac field
/// (Bose factor: the reverse statistics inversion).
inline double beta_sq_semi_fermion_thermal(double k, double alpha, double omega,
                                           double omega_prime) {
  const double ratio = alpha / omega_prime;
  return bose_factor(2.0 * pi * omega / k) * ratio * ratio /
         (2.0 * pi * k * omega);
}

inline BetaCoefficient beta_rr_semi_fermion_asymptotic(double k, double alpha,
                                                       double omega,
                                                       double omega_prime) {
  if (!(k > 0.0) || !(omega > 0.0) || !(omega_prime > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("beta_rr_semi_fermion_asymptotic: invalid parameters");
  }
  const double c = omega / k;
  BetaCoefficient beta;
  beta.value = Complex{0.0, 1.0} * alpha / (2.0 * pi * omega * k) *
               imaginary_power(k / omega_prime, c, 1.0) *
               std::exp(log_gamma(Complex{1.0, c}));
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

/// Fermionic beta^{R,L} via the transposed spinor product on right null
/// future infinity; same closed-form treatment of the inertial stretches as
/// the scalar channel.
inline BetaCoefficient beta_rl_semi_fermion_numeric(
    const CollapseTrajectory& traj, double alpha, double omega,
    double omega_prime, const QuadratureConfig& cfg = {},
    TransTailExponent tail = TransTailExponent::AsPrinted) {
  if (!(omega > 0.0) || !(omega_prime > 0.0) || !(alpha >= 0.0)) {
    throw DomainError("beta_rl_semi_fermion_numeric: invalid parameters");
  }
  if (!traj.is_finite()) {
    throw DomainError("beta_rl_semi_fermion_numeric: finite-collapse only");
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

  const double inv_2pi = 1.0 / (2.0 * pi);
  const Complex s_wp = omega_prime / Complex{omega_prime, alpha};
  const double wsum = omega + omega_prime;

  const Complex seg_neg = inv_2pi * s_wp * Complex{0.0, 1.0} / wsum;

  QuadratureConfig mid_cfg = cfg;
  mid_cfg.oscillation_rate = wsum;
  const QuadratureConfig mode_cfg = cfg.inner();
  double worst_mode_err = 0.0;
  QuadStatus mode_status = QuadStatus::Ok;
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  auto f_mid = [&](double u) {
    ModeValue mv = mode_trans_fermion(traj, alpha, omega_prime, u, mode_cfg, tail);
    worst_mode_err = std::max(worst_mode_err, mv.err_estimate);
    if (mv.status != QuadStatus::Ok) mode_status = mv.status;
    return norm * std::exp(Complex{0.0, -omega * u}) * mv.value;
  };
  IntegralResult mid = integrate(f_mid, 0.0, u0, mid_cfg);

  const double A = traj.final_slope();
  const double sqrtA = std::sqrt(A);
  const double quarterA = std::sqrt(sqrtA);
  const double ubar0 = traj.ubar_end();
  const double m0 = k * ubar0 / 2.0;
  const double q = 2.0 * alpha / k;
  IntegralResult inner =
      detail::trans_mode_integral(m0, 2.0 * omega_prime / k, 0.5, q, cfg.inner());
  const Complex cc = std::exp(Complex{0.0, -omega_prime * u0}) /
                     Complex{omega_prime, alpha * sqrtA};
  const Complex decay_amp = (Complex{0.0, -alpha} / Complex{omega_prime, alpha}) *
                                quarterA * std::exp(-alpha * ubar0) -
                            (2.0 * alpha / k) * quarterA * inner.value;
  const double bracket_rate =
      (tail == TransTailExponent::AsPrinted) ? alpha * A : alpha * sqrtA;
  const Complex seg_tail =
      inv_2pi * std::exp(Complex{0.0, -omega * u0}) *
      (decay_amp / Complex{alpha * sqrtA, omega} +
       cc * omega_prime / Complex{0.0, wsum} +
       cc * Complex{0.0, alpha * sqrtA} / Complex{bracket_rate, omega});

  beta.value = seg_neg + mid.value + seg_tail;
  beta.err_estimate = mid.err_estimate + u0 * norm * worst_mode_err +
                      inv_2pi * (2.0 * alpha / k) * quarterA *
                          inner.err_estimate / std::hypot(alpha * sqrtA, omega);
  beta.quad_status = mid.ok() ? mode_status : mid.status;
  return beta;
}

}  // namespace mirrorrad
