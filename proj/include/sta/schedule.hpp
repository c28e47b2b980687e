#pragma once

// Path parameters theta(t) (logistic ramp) and gamma(t) (Gaussian bump) on
// the symmetric window t in [-T/2, T/2]. Units are dimensionless: hbar = 1,
// times in the same units as T.

namespace sta {

enum class MixingProfile {
  Gaussian,  ///< gamma = gamma0 exp(-t^2 / tau2^2)
  Constant,  ///< gamma = gamma0, the adiabatic (dark-state) reference limit
};

struct ScheduleParams {
  double T = 1.0;
  double tau1 = 0.12;
  double tau2 = 0.3;
  double gamma0 = 0.15 * 3.14159265358979323846;
  double phi = 0.5 * 3.14159265358979323846;
  MixingProfile mixing = MixingProfile::Gaussian;

  double t_initial() const { return -0.5 * T; }
  double t_final() const { return 0.5 * T; }

  /// Throws SingularScheduleError for gamma0 == 0 and DomainError for any
  /// other range violation:
  ///   0 < tau1 <= 0.12 T,  0.2 T <= tau2 <= 0.3 T,  0 < gamma0 < pi/2,  0 < phi <= pi/2.
  void validate() const;
};

struct ScheduleSample {
  double t = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
  double gamma = 0.0;
  double gamma_dot = 0.0;
  // theta_dot * tan(theta) and theta_dot * cot(theta), both finite on the
  // whole window even where theta underflows to 0 or rounds to pi/2.
  double theta_dot_tan_theta = 0.0;
  double theta_dot_cot_theta = 0.0;
};

/// Throws DomainError if t is outside [-T/2, T/2] (a relative slack of 1e-12 is admitted).
ScheduleSample evaluate(const ScheduleParams& params, double t);

struct BoundaryReport {
  double theta_initial = 0.0;         ///< theta(t_i), ideally 0
  double theta_final_deficit = 0.0;   ///< theta(t_f) - pi/2, ideally 0
  double gamma_initial = 0.0;
  double gamma_final = 0.0;
  double gamma_dot_initial = 0.0;
  double gamma_dot_final = 0.0;
  /// Angle deviations (theta, gamma) all within tol. The gamma_dot entries
  /// carry units of 1/time and are reported, not compared against an angle.
  bool pass = false;

  /// Largest angle deviation in rad.
  double max_angle_deviation() const;
};

inline constexpr double kDefaultBoundaryTolerance = 0.05;

/// How far the finite window leaves theta and gamma from their ideal end values.
/// Throws DomainError if tol <= 0.
BoundaryReport check_boundaries(const ScheduleParams& params, double tol = kDefaultBoundaryTolerance);

}  // namespace sta
