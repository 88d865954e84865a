#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mirrorrad/scalar_mirror.hpp"

using namespace mirrorrad;

TEST_CASE("scatter coefficients: unitarity and limits") {
  for (int i = 0; i <= 60; ++i) {
    const double w = 1e-6 * std::pow(1e12, i / 60.0);
    for (double alpha : {1e-3, 1.0, 1e4}) {
      auto [r, s] = scatter(alpha, w);
      CHECK(std::norm(r) + std::norm(s) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  auto [r0, s0] = scatter(0.0, 5.0);
  CHECK(std::abs(r0) == 0.0);
  CHECK(s0 == Complex{1.0, 0.0});
  auto [rs, ss] = scatter(3.0, 3.0);  // alpha = omega symmetry point
  CHECK(std::norm(rs) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::norm(ss) == doctest::Approx(0.5).epsilon(1e-15));
  auto [rp, sp] = scatter(1e6, 1.0);
  CHECK(std::abs(rp + 1.0) < 2e-6);
  CHECK(std::abs(sp) == doctest::Approx(1e-6).epsilon(1e-6));
}

TEST_CASE("perfect mirror: numeric beta against frozen brute-force value") {
  // (k=1, u0=30, w=0.5, w'=50); the core integral
  // int_0^{1-A} (1-s)^{i c} e^{-i b s} ds from a fixed-step 2e7-node
  // composite Simpson evaluation of the log-substituted integrand in
  // long double.
  const Complex core{0.007044544109250814, -0.022482776050398996};
  const double k = 1.0, u0 = 30.0, w = 0.5, wp = 50.0;
  const double A = std::exp(-k * u0);
  const double v0 = (1.0 - A) / k;
  const Complex pref = Complex{0.0, -1.0} / (2.0 * pi * std::sqrt(w * wp));
  const Complex oracle = pref * (wp / (w + wp)) -
                         pref * std::exp(Complex{0.0, -(w * u0 + wp * v0)}) *
                             (wp * A / (w + wp * A)) -
                         std::sqrt(wp / w) / (2.0 * pi * k) * core;

  auto traj = CollapseTrajectory::finite(k, u0);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-15;
  auto beta = beta_rr_perfect_numeric(traj, w, wp, cfg);
  CHECK(std::abs(beta.value - oracle) / std::abs(oracle) < 1e-7);
}

TEST_CASE("perfect mirror: Planck factor in the thermal window") {
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  auto beta = beta_rr_perfect_numeric(traj, 1.0, 100.0);
  const double target = beta_sq_perfect_thermal(1.0, 1.0, 100.0);
  CHECK(target == doctest::Approx(2.977e-6).epsilon(1e-3));
  CHECK(beta.abs_sq() == doctest::Approx(target).epsilon(0.05));
}

TEST_CASE("static mirror creates nothing") {
  auto traj = CollapseTrajectory::finite(1.0, 1e-12);
  auto beta = beta_rr_perfect_numeric(traj, 1.0, 20.0);
  CHECK(beta.abs_sq() < 1e-20);
}

TEST_CASE("perfect asymptotic closed form") {
  auto beta = beta_rr_perfect_asymptotic(1.0, 1.0, 100.0);
  // modulus-squared equals the Planck-factor formula identically
  CHECK(beta.abs_sq() ==
        doctest::Approx(beta_sq_perfect_thermal(1.0, 1.0, 100.0))
            .epsilon(1e-12));
  const double ratio = beta_rr_perfect_asymptotic(1.0, 1.0, 100.0).abs_sq() /
                       beta_rr_perfect_asymptotic(1.0, 2.0, 100.0).abs_sq();
  CHECK(ratio == doctest::Approx((std::exp(4.0 * pi) - 1.0) /
                                 (std::exp(2.0 * pi) - 1.0))
                     .epsilon(1e-12));
  // Boltzmann suppression
  CHECK(beta_rr_perfect_asymptotic(1.0, 40.0, 100.0).abs_sq() < 1e-100);
  CHECK_FALSE(beta_rr_perfect_asymptotic(1.0, 1.0, 2.0).regime_ok);
}

TEST_CASE("semi-transparent: Fermi factor from the same trajectory") {
  // The statistics inversion: perfect reflection radiates a Bose factor,
  // the alpha << w' mirror a Fermi factor. The printed nested-integral
  // expression carries an O(sqrt(k/w')) soft-reflection correction, so the
  // closed form is matched at the amplitude level.
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-8;
  cfg.abs_tol = 1e-13;
  for (double w : {0.5, 1.0}) {
    const double wp = 200.0;
    auto semi = beta_rr_semi_numeric(traj, 1.0, w, wp, cfg);
    const double fermi_target = beta_sq_semi_thermal(1.0, 1.0, w, wp);
    CHECK(std::sqrt(semi.abs_sq()) ==
          doctest::Approx(std::sqrt(fermi_target)).epsilon(0.10));
    auto perf = beta_rr_perfect_numeric(traj, w, wp, cfg);
    CHECK(perf.abs_sq() ==
          doctest::Approx(beta_sq_perfect_thermal(1.0, w, wp)).epsilon(0.05));
  }
}

TEST_CASE("semi-transparent regression values") {
  // frozen pipeline outputs, (k=1, u0=30, alpha=1)
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-8;
  cfg.abs_tol = 1e-13;
  auto b = beta_rr_semi_numeric(traj, 1.0, 0.5, 100.0, cfg);
  CHECK(b.abs_sq() == doctest::Approx(1.099664e-06).epsilon(1e-4));
}

TEST_CASE("transparent mirror is exactly silent") {
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  CHECK(beta_rr_semi_numeric(traj, 0.0, 0.5, 100.0).abs_sq() == 0.0);
  CHECK(beta_rl_semi_numeric(traj, 0.0, 0.5, 100.0).abs_sq() == 0.0);
}

TEST_CASE("semi asymptotic: regime flag and closed form") {
  auto beta = beta_rr_semi_asymptotic(1.0, 1.0, 1.0, 200.0);
  CHECK(beta.abs_sq() ==
        doctest::Approx(beta_sq_semi_thermal(1.0, 1.0, 1.0, 200.0))
            .epsilon(1e-12));
  CHECK(beta.regime_ok);
  CHECK_FALSE(beta_rr_semi_asymptotic(1.0, 100.0, 1.0, 200.0).regime_ok);
}

TEST_CASE("regime collapse: large alpha reproduces the perfect mirror") {
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.abs_tol = 1e-12;
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> uw(std::log(0.05), std::log(0.3));
  std::uniform_real_distribution<double> up(std::log(1e2), std::log(1e4));
  for (int i = 0; i < 3; ++i) {
    const double w = std::exp(uw(rng));
    const double wp = std::exp(up(rng));
    auto semi = beta_rr_semi_numeric(traj, 1e3 * wp, w, wp, cfg);
    auto perf = beta_rr_perfect_numeric(traj, w, wp, cfg);
    CHECK(semi.abs_sq() == doctest::Approx(perf.abs_sq()).epsilon(0.02));
  }
}

TEST_CASE("u0 stability on the thermal plateau") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 1e-14;
  auto a = beta_rr_perfect_numeric(CollapseTrajectory::finite(1.0, 30.0), 0.5,
                                   100.0, cfg);
  auto b = beta_rr_perfect_numeric(CollapseTrajectory::finite(1.0, 35.0), 0.5,
                                   100.0, cfg);
  CHECK(a.abs_sq() == doctest::Approx(b.abs_sq()).epsilon(0.01));
}

TEST_CASE("operational ceiling is reported, not silently wrong") {
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  auto b = beta_rr_semi_numeric(traj, 1.0, 0.5, 2e6);
  CHECK(b.quad_status == QuadStatus::SubdivisionLimit);
  CHECK(!b.warnings.empty());
}

TEST_CASE("validity-window guard") {
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  auto inside = beta_rr_perfect_numeric(traj, 0.5, 100.0);
  CHECK(inside.warnings.empty());
  auto outside = beta_rr_perfect_numeric(traj, 0.5, 2.0);
  CHECK(!outside.warnings.empty());
}

TEST_CASE("mode functions: transparent and perfect limits") {
  auto traj = CollapseTrajectory::finite(1.0, 10.0);
  const double w = 0.7;
  const double norm = 1.0 / std::sqrt(4.0 * pi * w);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 1e-13;

  // alpha -> 0: no reflection, free transmission
  auto r0 = mode_refl_scalar(traj, 1e-8, w, 3.0, cfg);
  CHECK(std::abs(r0.value) < 1e-6 * norm);
  auto t0 = mode_trans_scalar(traj, 1e-8, w, 3.0, cfg);
  CHECK(std::abs(t0.value - norm * std::exp(Complex{0.0, -w * 3.0})) <
        1e-6 * norm);

  // alpha -> infinity: total reflection with the ray-traced phase
  auto rp = mode_refl_scalar(traj, 1e6, w, -1.0, cfg);
  const Complex target = -norm * std::exp(Complex{0.0, -w * traj.ray_advance(-1.0)});
  CHECK(std::abs(rp.value - target) < 1e-5 * norm);
}

TEST_CASE("mode functions: branch continuity") {
  auto traj = CollapseTrajectory::finite(1.0, 10.0);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 1e-13;
  for (double junction : {0.0, 10.0}) {
    auto lo = mode_refl_scalar(traj, 1.0, 0.7, junction - 1e-9, cfg);
    auto hi = mode_refl_scalar(traj, 1.0, 0.7, junction + 1e-9, cfg);
    CHECK(std::abs(lo.value - hi.value) < 1e-6);
    auto lot = mode_trans_scalar(traj, 1.0, 0.7, junction - 1e-9, cfg);
    auto hit = mode_trans_scalar(traj, 1.0, 0.7, junction + 1e-9, cfg);
    CHECK(std::abs(lot.value - hit.value) < 1e-6);
  }
}

TEST_CASE("RL channel: free field and hierarchy") {
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.abs_tol = 1e-12;
  CHECK(beta_rl_semi_numeric(traj, 1e-6, 1.0, 200.0, cfg).abs_sq() < 1e-12);
  const double rl = beta_rl_semi_numeric(traj, 1.0, 1.0, 200.0, cfg).abs_sq();
  const double rr = beta_rr_semi_numeric(traj, 1.0, 1.0, 200.0, cfg).abs_sq();
  CHECK(rl < rr);
}
