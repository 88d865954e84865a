#pragma once

#include <cmath>
#include <limits>

#include "mirrorrad/common.hpp"

namespace mirrorrad {

enum class TrajectoryVariant { FiniteCollapse, EternalCollapse };

/// Mirror worldline that simulates black-hole collapse: inertial for u<0,
/// exponential ray map v = (1-e^{-ku})/k while accelerating, and (in the
/// finite variant) inertial again with slope A = e^{-k u0} after u0.
///
/// All maps are exact closed forms; the late branch is evaluated in affine
/// form so arguments of order 1e8 never go through exp().
class CollapseTrajectory {
 public:
  static CollapseTrajectory finite(double k, double u0) {
    if (!(k > 0.0) || !(u0 >= 0.0)) {
      throw DomainError("CollapseTrajectory: need k > 0 and u0 >= 0");
    }
    return CollapseTrajectory(k, u0, TrajectoryVariant::FiniteCollapse);
  }

  static CollapseTrajectory eternal(double k) {
    if (!(k > 0.0)) {
      throw DomainError("CollapseTrajectory: need k > 0");
    }
    return CollapseTrajectory(k, std::numeric_limits<double>::infinity(),
                              TrajectoryVariant::EternalCollapse);
  }

  double k() const { return k_; }
  double u0() const { return u0_; }
  TrajectoryVariant variant() const { return variant_; }
  bool is_finite() const { return variant_ == TrajectoryVariant::FiniteCollapse; }

  /// Final ray slope A = e^{-k u0}; zero for the eternal variant.
  double final_slope() const { return slope_; }

  /// v0 = V(u0) = (1-A)/k; the horizon value 1/k for the eternal variant.
  double v_end() const { return v0_; }

  /// ubar(u0); +inf for the eternal variant.
  double ubar_end() const { return ubar0_; }

  /// V(u): advanced time of the ray reflected at retarded time u.
  double ray_advance(double u) const {
    if (u <= 0.0) return u;
    if (u >= u0_) return v0_ + slope_ * (u - u0_);
    return -std::expm1(-k_ * u) / k_;
  }

  /// U(v): inverse of V. Throws for the eternal variant at or past the
  /// horizon v = 1/k, where no retarded preimage exists.
  double ray_retard(double v) const {
    if (v <= 0.0) return v;
    if (is_finite()) {
      if (v >= v0_) return u0_ + (v - v0_) / slope_;
      return -std::log1p(-k_ * v) / k_;
    }
    if (v >= 1.0 / k_) {
      throw DomainError("ray_retard: v is at or beyond the horizon 1/k");
    }
    return -std::log1p(-k_ * v) / k_;
  }

  /// V'(u), piecewise {1, e^{-ku}, A}; always in (0, 1].
  double ray_velocity(double u) const {
    if (u <= 0.0) return 1.0;
    if (u >= u0_) return slope_;
    return std::exp(-k_ * u);
  }

  /// ubar(u): light-cone coordinate in the mirror rest frame, ubar' = sqrt(V').
  double comoving_u(double u) const {
    if (u <= 0.0) return u;
    if (u >= u0_) return ubar0_ + sqrt_slope_ * (u - u0_);
    return -2.0 * std::expm1(-k_ * u / 2.0) / k_;
  }

  /// vbar(v): same rest-frame coordinate reached through the advanced ray.
  /// Same domain restriction as ray_retard for the eternal variant.
  double comoving_v(double v) const {
    if (v <= 0.0) return v;
    if (is_finite()) {
      if (v >= v0_) return ubar0_ + (v - v0_) / sqrt_slope_;
      return (2.0 / k_) * (1.0 - std::sqrt(1.0 - k_ * v));
    }
    if (v >= 1.0 / k_) {
      throw DomainError("comoving_v: v is at or beyond the horizon 1/k");
    }
    return (2.0 / k_) * (1.0 - std::sqrt(1.0 - k_ * v));
  }

 private:
  CollapseTrajectory(double k, double u0, TrajectoryVariant variant)
      : k_(k), u0_(u0), variant_(variant) {
    if (variant == TrajectoryVariant::FiniteCollapse) {
      slope_ = std::exp(-k * u0);
      sqrt_slope_ = std::exp(-k * u0 / 2.0);
      v0_ = -std::expm1(-k * u0) / k;
      ubar0_ = -2.0 * std::expm1(-k * u0 / 2.0) / k;
    } else {
      slope_ = 0.0;
      sqrt_slope_ = 0.0;
      v0_ = 1.0 / k;
      ubar0_ = std::numeric_limits<double>::infinity();
    }
  }

  double k_;
  double u0_;
  TrajectoryVariant variant_;
  double slope_;       // A
  double sqrt_slope_;  // sqrt(A)
  double v0_;          // V(u0)
  double ubar0_;       // ubar(u0)
};

}  // namespace mirrorrad
