#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mirrorrad/common.hpp"
#include "mirrorrad/quadrature.hpp"
#include "mirrorrad/trajectory.hpp"

namespace mirrorrad {

enum class Channel { RR, RL };
enum class Method { Numeric, Asymptotic };

struct BetaParams {
  double k = 0.0;
  double u0 = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
  double omega_prime = 0.0;
};

/// One complex Bogoliubov amplitude. For Method::Asymptotic the numeric
/// err_estimate is not meaningful; regime_ok plays that role instead.
struct BetaCoefficient {
  Complex value{0.0, 0.0};
  Channel channel = Channel::RR;
  Method method = Method::Numeric;
  double err_estimate = 0.0;
  BetaParams params{};
  QuadStatus quad_status = QuadStatus::Ok;
  bool regime_ok = true;
  std::vector<std::string> warnings;

  double abs_sq() const { return std::norm(value); }
};

enum class RegimeTag { PerfectLimit, Transparent, SemiTransparent, Intermediate };

struct RegimeConfig {
  double far_ratio = 1e3;  // how much bigger "x much less than y" demands
};

inline RegimeTag classify_regime(double alpha, double omega_prime,
                                 const RegimeConfig& cfg = {}) {
  if (alpha == 0.0) return RegimeTag::Transparent;
  if (alpha >= cfg.far_ratio * omega_prime) return RegimeTag::PerfectLimit;
  if (omega_prime >= cfg.far_ratio * alpha) return RegimeTag::SemiTransparent;
  return RegimeTag::Intermediate;
}

inline const char* regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::PerfectLimit: return "perfect-limit";
    case RegimeTag::Transparent: return "transparent";
    case RegimeTag::SemiTransparent: return "semi-transparent";
    default: return "intermediate";
  }
}

/// Bose-Einstein occupation shape 1/(e^x - 1).
inline double bose_factor(double x) {
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

/// Fermi-Dirac occupation shape 1/(e^x + 1); 1/2 at x = 0.
inline double fermi_factor(double x) {
  if (x > 700.0) return 0.0;
  return 1.0 / (std::exp(x) + 1.0);
}

namespace detail {

/// Thermal-window guard: the closed forms hold for 1 << w'/k << e^{k u0}
/// and 1 << w'/w << e^{k u0}. Compared in logs so large k*u0 cannot
/// overflow. Appends warnings and clears regime_ok when outside.
inline void guard_validity_window(BetaCoefficient& beta, double k, double u0,
                                  double omega, double omega_prime) {
  const double log_win_hi = k * u0 - std::log(10.0);
  auto check = [&](double ratio, const char* what) {
    const double lr = std::log(ratio);
    if (lr < std::log(10.0) || lr > log_win_hi) {
      beta.regime_ok = false;
      beta.warnings.push_back(std::string("RegimeWarning: ") + what +
                              " outside validity window [10, e^{k u0}/10]");
    }
  };
  check(omega_prime / k, "omega'/k");
  check(omega_prime / omega, "omega'/omega");
}

}  // namespace detail

}  // namespace mirrorrad
