#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "mirrorrad/common.hpp"

namespace mirrorrad {

enum class QuadStatus { Ok, ToleranceNotReached, SubdivisionLimit };

struct IntegralResult {
  Complex value{0.0, 0.0};
  double err_estimate = 0.0;
  std::int64_t evaluations = 0;
  QuadStatus status = QuadStatus::Ok;

  bool ok() const { return status == QuadStatus::Ok; }
};

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 200000;
  /// Largest phase derivative of the integrand, when known. Used to seed
  /// initial panel widths at 2*pi/rate so an oscillatory integrand cannot
  /// fool the embedded error estimate on a single wide panel.
  double oscillation_rate = 0.0;

  /// Config for an inner pass of a nested integral: abs_tol tightened 10x
  /// so the outer error estimate stays honest.
  QuadratureConfig inner() const {
    QuadratureConfig c = *this;
    c.abs_tol /= 10.0;
    c.rel_tol /= 10.0;
    return c;
  }
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1]. Odd Kronrod indices are the Gauss nodes.
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  Complex value{0.0, 0.0};
  double err = 0.0;
  std::uint64_t id = 0;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.id > y.id;  // deterministic tie break
  }
};

template <class F>
Panel eval_panel(const F& f, double a, double b, std::uint64_t id) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex k15 = gk_wk[7] * f(mid);
  Complex g7 = gk_wg[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const Complex lo = f(mid - half * gk_nodes[i]);
    const Complex hi = f(mid + half * gk_nodes[i]);
    k15 += gk_wk[i] * (lo + hi);
    if (i % 2 == 1) g7 += gk_wg[i / 2] * (lo + hi);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = half * k15;
  p.err = std::abs(half * (k15 - g7));
  p.id = id;
  return p;
}

}  // namespace detail

/// Adaptive complex-valued Gauss-Kronrod quadrature over a finite interval.
/// The error estimate is the summed embedded-rule difference; it is a
/// heuristic surrogate, not a certified bound.
template <class F>
IntegralResult integrate(const F& f, double a, double b,
                         const QuadratureConfig& cfg = {}) {
  IntegralResult res;
  if (!(a < b)) {
    if (a == b) return res;
    throw DomainError("integrate: requires a < b");
  }

  // Seed panels no wider than one oscillation period, capped so a huge rate
  // does not allocate millions of panels up front; adaptivity does the rest.
  int n0 = 1;
  if (cfg.oscillation_rate > 0.0) {
    const double want = (b - a) * cfg.oscillation_rate / (2.0 * pi);
    n0 = static_cast<int>(std::min(4096.0, std::max(1.0, std::ceil(want))));
  }

  std::priority_queue<detail::Panel, std::vector<detail::Panel>,
                      detail::PanelOrder>
      heap;
  std::uint64_t next_id = 0;
  Complex total{0.0, 0.0};
  double total_err = 0.0;
  const double width = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const double pa = a + i * width;
    const double pb = (i + 1 == n0) ? b : a + (i + 1) * width;
    detail::Panel p = detail::eval_panel(f, pa, pb, next_id++);
    res.evaluations += 15;
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }

  int splits = n0;
  while (true) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (total_err <= tol) break;
    if (splits >= cfg.max_subdivisions) {
      res.status = QuadStatus::SubdivisionLimit;
      break;
    }
    detail::Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Panel narrower than machine resolution; accept what it says.
      res.status = QuadStatus::ToleranceNotReached;
      total += worst.value;
      total_err += worst.err;
      break;
    }
    detail::Panel left = detail::eval_panel(f, worst.a, mid, next_id++);
    detail::Panel right = detail::eval_panel(f, mid, worst.b, next_id++);
    res.evaluations += 30;
    total += left.value + right.value;
    total_err += left.err + right.err;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  res.value = total;
  res.err_estimate = total_err;
  return res;
}

/// Decay envelope the caller asserts for an improper integral's tail.
struct TailEnvelope {
  enum class Kind { PowerMinusTwo, Exponential };
  Kind kind = Kind::PowerMinusTwo;
  double coeff = 1.0;  // C in |f(x)| <= C x^{-2}, resp. C e^{-rate x}
  double rate = 1.0;   // exponential only

  double bound_beyond(double x) const {
    if (kind == Kind::PowerMinusTwo) return coeff / x;
    return coeff * std::exp(-rate * x) / rate;
  }

  static TailEnvelope power(double coeff) {
    return TailEnvelope{Kind::PowerMinusTwo, coeff, 0.0};
  }
  static TailEnvelope exponential(double coeff, double rate) {
    return TailEnvelope{Kind::Exponential, coeff, rate};
  }
};

/// Integral over [a, inf): finite-interval quadrature to a cut point chosen
/// so the analytic tail bound is below abs_tol/2; the dropped tail bound is
/// folded into err_estimate. Segments double geometrically so decades-wide
/// power-law tails stay cheap.
template <class F>
IntegralResult integrate_tail(const F& f, double a, const TailEnvelope& tail,
                              const QuadratureConfig& cfg = {}) {
  IntegralResult res;
  const double half_tol = cfg.abs_tol / 2.0;

  double cut;
  if (tail.kind == TailEnvelope::Kind::PowerMinusTwo) {
    cut = std::max(std::max(a, 1.0) * 2.0, tail.coeff / half_tol);
  } else {
    if (!(tail.rate > 0.0)) {
      throw DomainError("integrate_tail: exponential envelope needs rate > 0");
    }
    const double x = std::log(tail.coeff / (tail.rate * half_tol)) / tail.rate;
    cut = std::max(a + 1.0 / tail.rate, x);
  }

  QuadratureConfig seg_cfg = cfg;
  seg_cfg.abs_tol = half_tol / 64.0;  // budget across the geometric segments
  Complex total{0.0, 0.0};
  double err = 0.0;
  double lo = a;
  const double first_step =
      (tail.kind == TailEnvelope::Kind::Exponential)
          ? std::max(1.0 / tail.rate, (cut - a) / 64.0)
          : std::max(std::abs(a), 1.0);
  double hi = std::min(cut, a + first_step);
  while (true) {
    IntegralResult seg = integrate(f, lo, hi, seg_cfg);
    res.evaluations += seg.evaluations;
    total += seg.value;
    err += seg.err_estimate;
    if (!seg.ok() && res.status == QuadStatus::Ok) res.status = seg.status;
    if (hi >= cut) break;
    lo = hi;
    hi = std::min(cut, 2.0 * hi - a);  // geometric doubling from a
    if (hi <= lo) hi = cut;
  }

  res.value = total;
  res.err_estimate = err + tail.bound_beyond(cut);
  if (res.status == QuadStatus::Ok &&
      res.err_estimate > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    res.status = QuadStatus::ToleranceNotReached;
  }
  return res;
}

}  // namespace mirrorrad
