#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mirrorrad/convergence.hpp"

using namespace mirrorrad;

TEST_CASE("classification of the finite collapse") {
  auto traj = CollapseTrajectory::finite(1.0, 10.0);
  auto rep = classify(traj);
  CHECK(rep.b1 == 1.0);
  CHECK(rep.b2 == doctest::Approx(std::exp(-10.0)).epsilon(1e-15));
  CHECK(rep.integral_neg == 0.0);
  const double A = std::exp(-10.0);
  CHECK(rep.integral_pos == doctest::Approx((1.0 - A) - 10.0 * A).epsilon(1e-14));
  CHECK(rep.asymptotically_inertial);
  CHECK(rep.condition_c);
  CHECK_FALSE(rep.infrared_safe);
  REQUIRE(rep.acceleration_jumps.size() == 2);
  CHECK(rep.acceleration_jumps[0] == 0.0);
  CHECK(rep.acceleration_jumps[1] == 10.0);

  // closed-form integral cross-checked by quadrature of |V' - B2|
  auto f = [&](double u) {
    return Complex{std::abs(traj.ray_velocity(u) - rep.b2), 0.0};
  };
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-15;
  auto q = integrate(f, 0.0, 10.0, cfg);
  CHECK(q.value.real() == doctest::Approx(rep.integral_pos).epsilon(1e-10));
}

TEST_CASE("classification of the eternal collapse and the degenerate limit") {
  auto rep = classify(CollapseTrajectory::eternal(2.0));
  CHECK(rep.b2 == 0.0);
  CHECK(rep.integral_pos == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(rep.asymptotically_inertial);
  CHECK(rep.condition_c);
  CHECK_FALSE(rep.infrared_safe);

  auto stat = classify(CollapseTrajectory::finite(1.0, 0.0));
  CHECK(stat.integral_pos == doctest::Approx(0.0).scale(1e-15));
  CHECK(stat.infrared_safe);
  CHECK(stat.acceleration_jumps.empty());
}

TEST_CASE("decay fit on synthetic power laws") {
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(10.0 * std::pow(10.0, i / 4.0));
  auto pure = [](double wp) { return 3.0 * std::pow(wp, -2.5); };
  auto fit = fit_decay_exponent(pure, grid);
  CHECK(fit.exponent == doctest::Approx(-2.5).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK_FALSE(fit.fit_unstable);

  // a non-power-law source must be rejected
  auto bent = [](double wp) {
    return std::pow(wp, -2.0) * std::exp(-wp / 100.0) +
           1e-9 * std::sin(3.0 * std::log(wp)) * std::sin(3.0 * std::log(wp));
  };
  auto bad = fit_decay_exponent(bent, grid);
  CHECK(bad.fit_unstable);

  CHECK_THROWS_AS((void)fit_decay_exponent(pure, {1.0, 2.0}), DomainError);
  auto zero = fit_decay_exponent([](double) { return 0.0; }, grid);
  CHECK(zero.fit_unstable);
}

TEST_CASE("thermal plateau fits as a clean 1/omega' law") {
  // Inside the thermal window |beta|^2 is proportional to 1/omega', so the
  // log-log fit is stable with slope -1; instability only appears once the
  // window's edge bends the curve.
  auto traj = CollapseTrajectory::finite(1.0, 30.0);
  QuadratureConfig qcfg;
  qcfg.rel_tol = 1e-8;
  qcfg.abs_tol = 1e-13;
  auto fit = uv_decay_probe(traj, 1.0, {50.0, 100.0, 200.0, 400.0}, qcfg);
  CHECK_FALSE(fit.fit_unstable);
  CHECK(fit.exponent == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("beyond the window the junction jump sets the UV power") {
  auto traj = CollapseTrajectory::finite(1.0, 2.0);
  QuadratureConfig qcfg;
  qcfg.rel_tol = 1e-8;
  qcfg.abs_tol = 1e-14;
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(1e2 * std::pow(1e2, i / 8.0));
  auto fit = uv_decay_probe(traj, 1.0, grid, qcfg);
  CHECK(fit.exponent == doctest::Approx(-5.0).epsilon(0.06));
}
