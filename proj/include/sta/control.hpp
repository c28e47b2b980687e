#pragma once

// Reverse-engineered control pulses that keep the Lambda system on the path
// |phi0(t)>, plus pulse-area and interaction-time metrics.

#include <numbers>
#include <span>
#include <vector>

#include "sta/basis.hpp"
#include "sta/schedule.hpp"

namespace sta {

inline constexpr int kDefaultGridSize = 4001;

/// Pulse area of two successive pi pulses, one per transition.
inline constexpr double kTwoPiPulseArea = 2.0 * std::numbers::pi;
/// Minimum area of the singular-Riemannian geodesic transfer.
inline constexpr double kGeodesicMinimumArea = std::numbers::sqrt3 * std::numbers::pi;

struct ControlSample {
  double t = 0.0;
  double omega_p = 0.0;  ///< pump Rabi frequency, |g> <-> |a>
  double omega_s = 0.0;  ///< Stokes Rabi frequency, |e> <-> |a>
  double delta1 = 0.0;   ///< detuning on |a>
  double delta2 = 0.0;   ///< detuning on |e>
};

/// Controls for arbitrary path phases phi1, phi2 and their rates. Singular
/// where sin(phi1), sin(phi2), cos(theta) or sin(theta) vanish.
///
///   Delta2 = [Omega_p cos(phi1) / (2 cos theta) - Omega_s cos(phi2) / (2 sin theta)] tan(gamma) + phi1' - phi2'
///   Delta1 = -cot(2 gamma) [Omega_p cos(theta) cos(phi1) + Omega_s sin(theta) cos(phi2)]
///            + phi1' cos^2(theta) + phi2' sin^2(theta) + Delta2 sin^2(theta)
ControlSample synthesize_general(double t, double theta, double gamma, double phi1, double phi2,
                                 const FrameRates& rates);

/// Controls for the constant-phase convention phi1 = -phi2 = params.phi.
///
///   Omega_p = (2/sin phi)(theta' cot(gamma) sin(theta) + gamma' cos(theta))
///   Omega_s = (2/sin phi)(theta' cot(gamma) cos(theta) - gamma' sin(theta))
///
/// Detunings vanish identically for phi = pi/2. Throws SingularScheduleError
/// for gamma0 = 0 and DomainError for other invalid parameters or t.
ControlSample synthesize(const ScheduleParams& params, double t);

struct Envelope {
  double omega0 = 0.0;       ///< sqrt(Omega_p^2 + Omega_s^2)
  double theta_tilde = 0.0;  ///< Omega_p = omega0 sin(theta_tilde), Omega_s = omega0 cos(theta_tilde)
};

Envelope envelope(const ScheduleParams& params, double t);

/// Phase beta0(t) with psi(t) = e^{i beta0} |phi0(t)> on the designed path:
///   beta0(t) = -cot(phi) * int_{t_i}^{t} (theta' tan(theta) + gamma' tan(gamma)) dt'
/// by composite Simpson with `grid_size` nodes (at least 3).
double global_phase(const ScheduleParams& params, double t, int grid_size = kDefaultGridSize);

/// beta0 at every node of an increasing grid starting at t_i. Each interval is
/// integrated by Simpson's rule with its own midpoint.
std::vector<double> global_phase_profile(const ScheduleParams& params, std::span<const double> grid);

struct PulseMetrics {
  double area = 0.0;        ///< int sqrt(Omega_p^2 + Omega_s^2) dt, rad
  double omega0_max = 0.0;  ///< max envelope on the grid, rad/time
  double time_scale = 0.0;  ///< T * omega0_max

  double area_over_pi() const { return area / std::numbers::pi; }
};

/// Area and peak envelope over [-T/2, T/2]. grid_size must be >= 512.
PulseMetrics pulse_metrics(const ScheduleParams& params, int grid_size = kDefaultGridSize);

struct AdiabaticReference {
  double area = 0.0;          ///< pi cot(gamma0) / sin(phi)
  double omega0_max = 0.0;    ///< pi cot(gamma0) / (4 tau1 sin(phi))
  double time_scale = 0.0;    ///< T * omega0_max
  double adiabaticity = 0.0;  ///< sqrt(2) cot(gamma0)
};

/// Closed-form metrics for the constant-gamma (STIRAP) limit.
AdiabaticReference adiabatic_reference(double gamma0, double tau1, double phi, double T = 1.0);

/// Quadrature of the same constant-gamma limit. The area integral runs over
/// [-2T, 2T] so that the logistic tails the closed form integrates over the
/// whole line are captured; the peak sits at t = 0 and is scaled by T.
AdiabaticReference adiabatic_reference_numeric(double gamma0, double tau1, double phi, double T = 1.0,
                                               int grid_size = 16001);

struct Waveforms {
  std::vector<double> grid;
  std::vector<ControlSample> samples;
  ScheduleParams params;
};

/// synthesize() on a uniform grid over [-T/2, T/2]; grid_size >= 2.
Waveforms sample_waveforms(const ScheduleParams& params, int grid_size);

/// n uniformly spaced nodes from a to b inclusive, endpoints exact.
std::vector<double> uniform_grid(double a, double b, int n);

/// Composite Simpson on uniform spacing h. An odd number of intervals closes
/// with Simpson's 3/8 rule; two nodes fall back to the trapezoid.
double simpson(std::span<const double> y, double h);

/// cot(phi), exactly zero at phi = pi/2.
double phase_cot(double phi);

}  // namespace sta
