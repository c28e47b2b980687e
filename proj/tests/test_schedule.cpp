#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sta/error.hpp"
#include "sta/schedule.hpp"

using namespace sta;
using std::numbers::pi;

namespace {

ScheduleParams fig3() {
  ScheduleParams p;
  p.tau1 = 0.115;
  p.tau2 = 0.3;
  p.gamma0 = 0.15 * pi;
  p.phi = 0.25 * pi;
  return p;
}

}  // namespace

TEST_CASE("midpoint values") {
  ScheduleParams p;
  const ScheduleSample s = evaluate(p, 0.0);
  CHECK(s.theta == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(s.gamma == p.gamma0);
  CHECK(s.gamma_dot == 0.0);
  CHECK(s.theta_dot == doctest::Approx(pi / (8 * 0.12)).epsilon(1e-14));
  CHECK(s.theta_dot == doctest::Approx(3.2725).epsilon(1e-4));
}

TEST_CASE("window edge value of the Gaussian") {
  ScheduleParams p;
  const ScheduleSample s = evaluate(p, -0.5);
  CHECK(s.gamma / p.gamma0 == doctest::Approx(std::exp(-25.0 / 9.0)).epsilon(1e-14));
  CHECK(s.gamma / p.gamma0 == doctest::Approx(0.0622).epsilon(1e-3));
}

TEST_CASE("evaluate rejects times outside the window") {
  ScheduleParams p;
  CHECK_THROWS_AS(evaluate(p, 0.51), DomainError);
  CHECK_THROWS_AS(evaluate(p, -0.5000001), DomainError);
  CHECK_NOTHROW(evaluate(p, 0.5));
}

TEST_CASE("parameter validation") {
  ScheduleParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma0 = 0.0;
  CHECK_THROWS_AS(p.validate(), SingularScheduleError);
  p = ScheduleParams{};
  p.tau1 = 0.13;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = ScheduleParams{};
  p.tau2 = 0.19;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = ScheduleParams{};
  p.gamma0 = 0.5 * pi;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = ScheduleParams{};
  p.phi = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = ScheduleParams{};
  p.phi = 0.6 * pi;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("values and derivatives against the direct formulas and central differences") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    ScheduleParams p;
    p.tau1 = rng.uniform(0.02, 0.12);
    p.tau2 = rng.uniform(0.2, 0.3);
    p.gamma0 = rng.uniform(0.01, 1.5);
    const double t = rng.uniform(-0.49, 0.49);
    const ScheduleSample s = evaluate(p, t);
    CHECK(s.theta == doctest::Approx(oracle::theta(t, p.tau1)).epsilon(1e-14));
    CHECK(s.gamma == doctest::Approx(oracle::gamma(t, p.gamma0, p.tau2)).epsilon(1e-14));

    const double h = 1e-6;
    const double fd_theta = oracle::central_difference([&](double x) { return oracle::theta(x, p.tau1); }, t, h);
    const double fd_gamma =
        oracle::central_difference([&](double x) { return oracle::gamma(x, p.gamma0, p.tau2); }, t, h);
    CHECK(std::abs(s.theta_dot - fd_theta) <= 1e-6 * std::abs(s.theta_dot));
    if (std::abs(t) > 1e-3) CHECK(std::abs(s.gamma_dot - fd_gamma) <= 1e-6 * std::abs(s.gamma_dot));

    CHECK(s.theta_dot_tan_theta == doctest::Approx(s.theta_dot * std::tan(s.theta)).epsilon(1e-9));
    CHECK(s.theta_dot_cot_theta == doctest::Approx(s.theta_dot / std::tan(s.theta)).epsilon(1e-9));
  }
}

TEST_CASE("stable products stay finite at extreme ratios") {
  ScheduleParams p;
  p.tau1 = 1e-4;
  for (double t : {-0.5, -0.2, 0.2, 0.5}) {
    const ScheduleSample s = evaluate(p, t);
    CHECK(std::isfinite(s.theta_dot_tan_theta));
    CHECK(std::isfinite(s.theta_dot_cot_theta));
  }
  // theta -> pi/2: theta_dot tan(theta) -> 1/tau1
  CHECK(evaluate(p, 0.5).theta_dot_tan_theta == doctest::Approx(1.0 / p.tau1).epsilon(1e-12));
  // theta -> 0: theta_dot cot(theta) -> 1/tau1
  CHECK(evaluate(p, -0.5).theta_dot_cot_theta == doctest::Approx(1.0 / p.tau1).epsilon(1e-12));
}

TEST_CASE("monotonicity and symmetry") {
  ScheduleParams p;
  double prev = -1.0;
  for (int k = 0; k <= 200; ++k) {
    const double t = -0.5 + k / 200.0;
    const ScheduleSample s = evaluate(p, t);
    CHECK(s.theta_dot > 0.0);
    CHECK(s.theta >= prev);
    CHECK(s.theta >= 0.0);
    CHECK(s.theta <= pi / 2);
    CHECK(s.gamma > 0.0);
    CHECK(s.gamma <= p.gamma0);
    prev = s.theta;
    CHECK(evaluate(p, -t).gamma_dot == -s.gamma_dot);
  }
}

TEST_CASE("time rescaling") {
  ScheduleParams p = fig3();
  ScheduleParams q = p;
  const double scale = 2.5;
  q.T *= scale;
  q.tau1 *= scale;
  q.tau2 *= scale;
  for (double x : {-0.5, -0.1, 0.0, 0.3, 0.5}) {
    const ScheduleSample a = evaluate(p, x), b = evaluate(q, x * scale);
    CHECK(b.theta == doctest::Approx(a.theta).epsilon(1e-14));
    CHECK(b.gamma == doctest::Approx(a.gamma).epsilon(1e-14));
    CHECK(b.theta_dot * scale == doctest::Approx(a.theta_dot).epsilon(1e-13));
    CHECK(b.gamma_dot * scale == doctest::Approx(a.gamma_dot).epsilon(1e-13));
  }
}

TEST_CASE("boundary report") {
  const BoundaryReport r = check_boundaries(fig3(), 0.05);
  CHECK(r.pass);
  CHECK(r.theta_initial == doctest::Approx(0.5 * pi / (1 + std::exp(0.5 / 0.115))).epsilon(1e-12));
  CHECK(r.theta_initial == doctest::Approx(0.0203).epsilon(0.01));
  CHECK(r.gamma_initial == doctest::Approx(0.0293).epsilon(0.01));
  CHECK(r.gamma_final == r.gamma_initial);
  CHECK(std::abs(r.theta_final_deficit) == doctest::Approx(r.theta_initial).epsilon(1e-12));
  CHECK(r.max_angle_deviation() <= 0.05);

  CHECK_FALSE(check_boundaries(fig3(), 1e-12).pass);
  CHECK_THROWS_AS(check_boundaries(fig3(), 0.0), DomainError);

  ScheduleParams tiny = fig3();
  tiny.gamma0 = 1e-9;
  const BoundaryReport small = check_boundaries(tiny);
  CHECK(small.gamma_initial < 1e-9);
  CHECK(std::abs(small.gamma_dot_initial) < 1e-8);
}

TEST_CASE("constant mixing profile") {
  ScheduleParams p;
  p.mixing = MixingProfile::Constant;
  const ScheduleSample s = evaluate(p, 0.37);
  CHECK(s.gamma == p.gamma0);
  CHECK(s.gamma_dot == 0.0);
}
