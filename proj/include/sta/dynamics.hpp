#pragma once

// Schrodinger integration under the Lambda Hamiltonian and the checks that
// tie the integrated state back to the designed path.

#include <array>
#include <functional>
#include <vector>

#include "sta/basis.hpp"
#include "sta/control.hpp"
#include "sta/schedule.hpp"

namespace sta {

inline constexpr int kDefaultSteps = 4000;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kNormDriftLimit = 1e-6;
inline constexpr double kFidelityFloor = 1e-16;

/// Normalized amplitudes in the (|g>, |a>, |e>) basis.
class QuantumState {
 public:
  /// Throws InvariantViolation unless sum |c_k|^2 = 1 within `tol`.
  explicit QuantumState(Vec3 amplitudes, double tol = kNormTolerance);

  static QuantumState basis(Level level);

  const Vec3& amplitudes() const { return amp_; }
  std::array<double, 3> populations() const;

 private:
  Vec3 amp_;
};

struct StateTrajectory {
  std::vector<double> grid;
  std::vector<Vec3> states;
  std::vector<std::array<double, 3>> populations;  ///< P_g, P_a, P_e
  int steps = 0;
  double norm_drift = 0.0;  ///< max_t | ||psi(t)|| - 1 |

  double final_population(Level level) const { return populations.back()[level]; }
};

/// H = (1/2)[Omega_p |a><g| + Omega_s |a><e| + h.c.] + Delta1 |a><a| + Delta2 |e><e|
Mat3 hamiltonian(const ControlSample& sample);

using HamiltonianFn = std::function<Mat3(double)>;

/// Fixed-step classical RK4 of i d/dt psi = H(t) psi over [-T/2, T/2].
/// Every `stride`-th state (and always the last) is recorded. Throws
/// IntegrationError when the norm drifts by more than 1e-6.
StateTrajectory integrate(const ScheduleParams& params, const QuantumState& psi0, int steps,
                          const HamiltonianFn& h, int stride = 1);

/// integrate() under the synthesized controls. steps >= 1000.
StateTrajectory evolve(const ScheduleParams& params, const QuantumState& psi0, int steps = kDefaultSteps,
                       int stride = 1);

/// Smallest step count >= base_steps that keeps ||H|| dt below
/// `max_phase_per_step` everywhere on the window.
int required_steps(const ScheduleParams& params, int base_steps = kDefaultSteps,
                   double max_phase_per_step = 0.02);

/// Frame along the designed path at time t (phi1 = phi, phi2 = -phi).
FrameBasis path_frame(const ScheduleParams& params, double t);

/// |phi0(t_i)>, the exact start of the designed path.
QuantumState path_start_state(const ScheduleParams& params);

struct PathFidelity {
  double t = 0.0;
  double p_d = 0.0;      ///< |<phi0(t)|psi(t)>|^2
  double epsilon = 0.0;  ///< log10(max(1 - p_d, 1e-16))
};

std::vector<PathFidelity> path_fidelity(const StateTrajectory& traj, const ScheduleParams& params);

struct DecouplingResidual {
  double t = 0.0;
  cplx r1;  ///< <phi1| channel
  cplx r2;  ///< <phi2| channel

  double max_abs() const;
};

/// H1 = R H R^dagger - i R dR^dagger/dt.
Mat3 rotating_frame_hamiltonian(const FrameBasis& frame, const Mat3& h);

/// Off-diagonal couplings <m|H1|0>, m = 1, 2, for an arbitrary frame and Hamiltonian.
DecouplingResidual decoupling_residual(const FrameBasis& frame, const Mat3& h, double t = 0.0);

/// Residuals of the synthesized pulses along the designed path.
DecouplingResidual decoupling_residual(const ScheduleParams& params, double t);

/// || psi(t) - e^{i beta0(t)} phi0(t) || per recorded sample. Meaningful when
/// the trajectory starts on the path (see path_start_state()).
std::vector<double> phase_consistency(const StateTrajectory& traj, const ScheduleParams& params);

struct DarkStateRow {
  double t = 0.0;
  std::array<double, 3> eigenvalues{};  ///< ascending
  double splitting = 0.0;               ///< theta' cot(gamma0)
  /// overlaps(i, n) = |<eigenvector_i | phi_n(t)>|, eigenvectors in eigenvalue order.
  Eigen::Matrix3d overlaps = Eigen::Matrix3d::Zero();
  double dark_overlap = 0.0;  ///< |<eigenvector of E = 0 | phi0>|
};

struct DarkStateReport {
  std::vector<DarkStateRow> rows;
  double adiabaticity = 0.0;  ///< sqrt(2) cot(gamma0)
};

/// Diagonalizes H(t) for the constant-gamma, phi = pi/2 configuration on a
/// uniform grid of `grid_points` times.
DarkStateReport dark_state_analysis(double gamma0, double tau1, int grid_points = 101, double T = 1.0);

}  // namespace sta
