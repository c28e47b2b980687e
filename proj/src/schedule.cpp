#include "sta/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sta/error.hpp"

namespace sta {

namespace {

using std::numbers::pi;

constexpr double kRangeSlack = 1e-12;

// x / tan(x), equal to 1 at x = 0.
double x_cot_x(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 3.0;
  return x / std::tan(x);
}

std::string describe(const char* name, double value) {
  std::ostringstream os;
  os.precision(12);
  os << name << " = " << value;
  return os.str();
}

}  // namespace

void ScheduleParams::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError(describe("T must be positive, got T", T));
  if (gamma0 == 0.0) throw SingularScheduleError("gamma0 = 0: cot(gamma) diverges");
  const double slack = kRangeSlack * T;
  if (!(tau1 > 0.0 && tau1 <= 0.12 * T + slack)) {
    throw DomainError(describe("tau1 must satisfy 0 < tau1 <= 0.12 T, got tau1/T", tau1 / T));
  }
  if (!(tau2 >= 0.2 * T - slack && tau2 <= 0.3 * T + slack)) {
    throw DomainError(describe("tau2 must satisfy 0.2 T <= tau2 <= 0.3 T, got tau2/T", tau2 / T));
  }
  if (!(gamma0 > 0.0 && gamma0 < 0.5 * pi)) {
    throw DomainError(describe("gamma0 must satisfy 0 < gamma0 < pi/2, got gamma0/pi", gamma0 / pi));
  }
  if (!(phi > 0.0 && phi <= 0.5 * pi + kRangeSlack)) {
    throw DomainError(describe("phi must satisfy 0 < phi <= pi/2, got phi/pi", phi / pi));
  }
}

ScheduleSample evaluate(const ScheduleParams& params, double t) {
  const double half = 0.5 * params.T;
  if (!(std::abs(t) <= half * (1.0 + kRangeSlack))) {
    throw DomainError(describe("time outside [-T/2, T/2]: t/T", t / params.T));
  }

  ScheduleSample s;
  s.t = t;

  // Logistic in the overflow-free form: sig = 1/(1+e^{-t/tau1}), sig_c = 1 - sig.
  const double z = t / params.tau1;
  double sig, sig_c;
  if (z >= 0.0) {
    const double u = std::exp(-z);
    sig = 1.0 / (1.0 + u);
    sig_c = u / (1.0 + u);
  } else {
    const double v = std::exp(z);
    sig = v / (1.0 + v);
    sig_c = 1.0 / (1.0 + v);
  }
  const double to_target = 0.5 * pi * sig_c;  // pi/2 - theta
  s.theta = 0.5 * pi * sig;
  s.theta_dot = 0.5 * pi * sig * sig_c / params.tau1;
  s.theta_dot_tan_theta = sig * x_cot_x(to_target) / params.tau1;
  s.theta_dot_cot_theta = sig_c * x_cot_x(s.theta) / params.tau1;

  if (params.mixing == MixingProfile::Constant) {
    s.gamma = params.gamma0;
    s.gamma_dot = 0.0;
  } else {
    const double w = t / params.tau2;
    s.gamma = params.gamma0 * std::exp(-w * w);
    s.gamma_dot = -2.0 * t / (params.tau2 * params.tau2) * s.gamma;
  }
  return s;
}

double BoundaryReport::max_angle_deviation() const {
  return std::max({std::abs(theta_initial), std::abs(theta_final_deficit), std::abs(gamma_initial),
                   std::abs(gamma_final)});
}

BoundaryReport check_boundaries(const ScheduleParams& params, double tol) {
  if (!(tol > 0.0)) throw DomainError(describe("boundary tolerance must be positive, got", tol));
  const ScheduleSample first = evaluate(params, params.t_initial());
  const ScheduleSample last = evaluate(params, params.t_final());

  BoundaryReport r;
  r.theta_initial = first.theta;
  r.theta_final_deficit = last.theta - 0.5 * pi;
  r.gamma_initial = first.gamma;
  r.gamma_final = last.gamma;
  r.gamma_dot_initial = first.gamma_dot;
  r.gamma_dot_final = last.gamma_dot;
  r.pass = r.max_angle_deviation() <= tol;
  return r;
}

}  // namespace sta
