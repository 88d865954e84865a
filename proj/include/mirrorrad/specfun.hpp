#pragma once

#include <cmath>

#include "mirrorrad/common.hpp"

namespace mirrorrad {

/// Principal-branch log Gamma(z) for Re z > 0, Lanczos g=7 rational
/// approximation. Relative accuracy is ~1e-14 on the strip the thermal
/// closed forms use (Re z in {1/2, 1}, |Im z| up to ~50).
inline Complex log_gamma(Complex z) {
  if (!(z.real() > 0.0)) {
    throw DomainError("log_gamma: requires Re z > 0");
  }
  static constexpr double g = 7.0;
  static constexpr double coeff[] = {
      0.99999999999980993,
      676.5203681218851,
      -1259.1392167224028,
      771.32342877765313,
      -176.61502916214059,
      12.507343278686905,
      -0.13857109526572012,
      9.9843695780195716e-6,
      1.5056327351493116e-7,
  };
  const Complex zm1 = z - 1.0;
  Complex sum = coeff[0];
  for (int i = 1; i < 9; ++i) {
    sum += coeff[i] / (zm1 + static_cast<double>(i));
  }
  const Complex base = zm1 + g + 0.5;
  return (zm1 + 0.5) * std::log(base) - base +
         std::log(std::sqrt(2.0 * pi) * sum);
}

/// |Gamma(1 + i x)|^2 = pi x / sinh(pi x); limit 1 at x = 0.
/// Evaluated from the asymptotic form once sinh would overflow.
inline double gamma_abs_sq_one_plus(double x) {
  if (!(x >= 0.0)) throw DomainError("gamma_abs_sq_one_plus: requires x >= 0");
  const double px = pi * x;
  if (px == 0.0) return 1.0;
  if (px > 700.0) return 2.0 * px * std::exp(-px);
  return px / std::sinh(px);
}

/// |Gamma(1/2 + i x)|^2 = pi / cosh(pi x); value pi at x = 0.
inline double gamma_abs_sq_half_plus(double x) {
  if (!(x >= 0.0)) throw DomainError("gamma_abs_sq_half_plus: requires x >= 0");
  const double px = pi * x;
  if (px > 700.0) return 2.0 * pi * std::exp(-px);
  return pi / std::cosh(px);
}

/// (i * ratio)^{i xim + p} on the principal branch (arg i = +pi/2), so the
/// modulus is ratio^p * e^{-pi xim / 2}. This is the (ik/w')^{iw/k + p}
/// factor of the thermal closed forms.
inline Complex imaginary_power(double ratio, double xim, double p) {
  if (!(ratio > 0.0)) throw DomainError("imaginary_power: requires ratio > 0");
  const Complex exponent{p, xim};
  const Complex log_base{std::log(ratio), pi / 2.0};
  return std::exp(exponent * log_base);
}

}  // namespace mirrorrad
