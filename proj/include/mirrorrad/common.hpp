#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mirrorrad {

using Complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr Complex iunit{0.0, 1.0};

/// Thrown when an argument is outside an operation's mathematical domain
/// (e.g. asking for the retarded preimage of a point behind the horizon).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rejects non-finite complex values at construction points where a NaN
/// would otherwise propagate silently into a spectrum table.
inline Complex checked(Complex z, const char* what = "non-finite complex value") {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(what);
  }
  return z;
}

}  // namespace mirrorrad
