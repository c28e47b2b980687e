#include "sta/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sta/error.hpp"

namespace sta {

namespace {

using std::numbers::pi;

// theta' tan(theta) + gamma' tan(gamma)
double phase_integrand(const ScheduleSample& s) {
  return s.theta_dot_tan_theta + s.gamma_dot * std::tan(s.gamma);
}

}  // namespace

double phase_cot(double phi) {
  if (phi == 0.5 * pi) return 0.0;
  return std::cos(phi) / std::sin(phi);
}

ControlSample synthesize_general(double t, double theta, double gamma, double phi1, double phi2,
                                 const FrameRates& rates) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cot_g = 1.0 / std::tan(gamma);
  const double td = rates.theta_dot, gd = rates.gamma_dot;

  ControlSample c;
  c.t = t;
  c.omega_p = 2.0 / std::sin(phi1) * (td * cot_g * st + gd * ct);
  c.omega_s = 2.0 / std::sin(phi2) * (-td * cot_g * ct + gd * st);
  c.delta2 = (c.omega_p * std::cos(phi1) / (2.0 * ct) - c.omega_s * std::cos(phi2) / (2.0 * st)) * std::tan(gamma) +
             rates.phi1_dot - rates.phi2_dot;
  c.delta1 = -1.0 / std::tan(2.0 * gamma) * (c.omega_p * ct * std::cos(phi1) + c.omega_s * st * std::cos(phi2)) +
             rates.phi1_dot * ct * ct + rates.phi2_dot * st * st + c.delta2 * st * st;
  return c;
}

ControlSample synthesize(const ScheduleParams& params, double t) {
  params.validate();
  const ScheduleSample s = evaluate(params, t);

  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  const double a = s.theta_dot / std::tan(s.gamma);  // theta' cot(gamma)
  const double b = s.gamma_dot;
  const double scale = 2.0 / std::sin(params.phi);

  ControlSample c;
  c.t = t;
  c.omega_p = scale * (a * st + b * ct);
  c.omega_s = scale * (a * ct - b * st);

  const double cot_phi = phase_cot(params.phi);
  if (cot_phi != 0.0) {
    const double theta_dot_cot_2theta = 0.5 * (s.theta_dot_cot_theta - s.theta_dot_tan_theta);
    const double ramp = theta_dot_cot_2theta - b * std::tan(s.gamma);
    const double sin2t = 2.0 * st * ct;
    const double cos2t = (ct - st) * (ct + st);
    c.delta2 = -2.0 * cot_phi * ramp;
    c.delta1 = -2.0 * cot_phi * ((a * sin2t + b * cos2t) / std::tan(2.0 * s.gamma) + ramp * st * st);
  }
  return c;
}

Envelope envelope(const ScheduleParams& params, double t) {
  params.validate();
  const ScheduleSample s = evaluate(params, t);
  const double a = s.theta_dot / std::tan(s.gamma);
  const double b = s.gamma_dot;
  return {2.0 / std::sin(params.phi) * std::hypot(a, b), s.theta + std::atan2(b, a)};
}

double global_phase(const ScheduleParams& params, double t, int grid_size) {
  params.validate();
  if (grid_size < 3) throw DomainError("global_phase needs at least 3 quadrature nodes");
  evaluate(params, t);  // domain check
  const double cot_phi = phase_cot(params.phi);
  const double ti = params.t_initial();
  if (cot_phi == 0.0 || t <= ti) return 0.0;

  const std::vector<double> nodes = uniform_grid(ti, t, grid_size);
  std::vector<double> f(nodes.size());
  std::transform(nodes.begin(), nodes.end(), f.begin(),
                 [&](double x) { return phase_integrand(evaluate(params, x)); });
  return -cot_phi * simpson(f, (t - ti) / (grid_size - 1));
}

std::vector<double> global_phase_profile(const ScheduleParams& params, std::span<const double> grid) {
  params.validate();
  std::vector<double> beta(grid.size(), 0.0);
  const double cot_phi = phase_cot(params.phi);
  if (cot_phi == 0.0 || grid.size() < 2) return beta;

  double acc = 0.0;
  double f_left = phase_integrand(evaluate(params, grid[0]));
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double h = grid[k] - grid[k - 1];
    const double f_mid = phase_integrand(evaluate(params, grid[k - 1] + 0.5 * h));
    const double f_right = phase_integrand(evaluate(params, grid[k]));
    acc += h / 6.0 * (f_left + 4.0 * f_mid + f_right);
    beta[k] = -cot_phi * acc;
    f_left = f_right;
  }
  return beta;
}

PulseMetrics pulse_metrics(const ScheduleParams& params, int grid_size) {
  params.validate();
  if (grid_size < 512) {
    throw DomainError("pulse_metrics needs grid_size >= 512, got " + std::to_string(grid_size));
  }
  const std::vector<double> grid = uniform_grid(params.t_initial(), params.t_final(), grid_size);
  std::vector<double> omega0(grid.size());
  std::transform(grid.begin(), grid.end(), omega0.begin(),
                 [&](double t) { return envelope(params, t).omega0; });

  PulseMetrics m;
  m.area = simpson(omega0, params.T / (grid_size - 1));
  m.omega0_max = *std::max_element(omega0.begin(), omega0.end());
  m.time_scale = params.T * m.omega0_max;
  return m;
}

AdiabaticReference adiabatic_reference(double gamma0, double tau1, double phi, double T) {
  if (!(gamma0 > 0.0 && gamma0 < 0.5 * pi)) throw DomainError("adiabatic_reference needs 0 < gamma0 < pi/2");
  if (!(tau1 > 0.0) || !(T > 0.0)) throw DomainError("adiabatic_reference needs positive tau1 and T");
  if (!(phi > 0.0 && phi <= 0.5 * pi)) throw DomainError("adiabatic_reference needs 0 < phi <= pi/2");
  const double cot_g = 1.0 / std::tan(gamma0);
  AdiabaticReference r;
  r.area = pi * cot_g / std::sin(phi);
  r.omega0_max = pi * cot_g / (4.0 * tau1 * std::sin(phi));
  r.time_scale = T * r.omega0_max;
  r.adiabaticity = std::numbers::sqrt2 * cot_g;
  return r;
}

AdiabaticReference adiabatic_reference_numeric(double gamma0, double tau1, double phi, double T,
                                               int grid_size) {
  ScheduleParams wide;
  wide.T = 4.0 * T;
  wide.tau1 = tau1;
  wide.tau2 = 0.25 * wide.T;  // unused by the constant profile
  wide.gamma0 = gamma0;
  wide.phi = phi;
  wide.mixing = MixingProfile::Constant;
  const PulseMetrics m = pulse_metrics(wide, grid_size);

  AdiabaticReference r;
  r.area = m.area;
  r.omega0_max = m.omega0_max;
  r.time_scale = T * m.omega0_max;
  r.adiabaticity = std::numbers::sqrt2 / std::tan(gamma0);
  return r;
}

Waveforms sample_waveforms(const ScheduleParams& params, int grid_size) {
  if (grid_size < 2) throw DomainError("sample_waveforms needs grid_size >= 2");
  params.validate();
  Waveforms w;
  w.params = params;
  w.grid = uniform_grid(params.t_initial(), params.t_final(), grid_size);
  w.samples.reserve(w.grid.size());
  for (double t : w.grid) w.samples.push_back(synthesize(params, t));
  return w;
}

std::vector<double> uniform_grid(double a, double b, int n) {
  if (n < 2) throw DomainError("uniform grid needs at least 2 nodes");
  std::vector<double> g(n);
  const double span = b - a;
  for (int k = 0; k < n; ++k) g[k] = a + span * static_cast<double>(k) / (n - 1);
  g.back() = b;
  return g;
}

double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (y[0] + y[1]);

  std::size_t intervals = n - 1;
  double tail = 0.0;
  if (intervals % 2 == 1) {
    const std::size_t k = n - 4;
    tail = 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
    intervals -= 3;
    if (intervals == 0) return tail;
  }
  double sum = y[0] + y[intervals];
  for (std::size_t k = 1; k < intervals; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * y[k];
  return h / 3.0 * sum + tail;
}

}  // namespace sta
