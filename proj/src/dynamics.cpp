#include "sta/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sta/error.hpp"

namespace sta {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

QuantumState::QuantumState(Vec3 amplitudes, double tol) : amp_(std::move(amplitudes)) {
  const double defect = std::abs(amp_.squaredNorm() - 1.0);
  if (!(defect <= tol)) {
    throw InvariantViolation("state is not normalized: | sum |c_k|^2 - 1 | = " + std::to_string(defect));
  }
}

QuantumState QuantumState::basis(Level level) {
  Vec3 v = Vec3::Zero();
  v(level) = 1.0;
  return QuantumState(v);
}

std::array<double, 3> QuantumState::populations() const {
  return {std::norm(amp_(0)), std::norm(amp_(1)), std::norm(amp_(2))};
}

Mat3 hamiltonian(const ControlSample& c) {
  Mat3 h = Mat3::Zero();
  h(kIntermediate, kGround) = 0.5 * c.omega_p;
  h(kGround, kIntermediate) = 0.5 * c.omega_p;
  h(kIntermediate, kTarget) = 0.5 * c.omega_s;
  h(kTarget, kIntermediate) = 0.5 * c.omega_s;
  h(kIntermediate, kIntermediate) = c.delta1;
  h(kTarget, kTarget) = c.delta2;
  return h;
}

StateTrajectory integrate(const ScheduleParams& params, const QuantumState& psi0, int steps,
                          const HamiltonianFn& h, int stride) {
  if (steps < 1) throw DomainError("integrate needs at least one step");
  if (stride < 1) throw DomainError("record stride must be positive");

  const std::vector<double> grid = uniform_grid(params.t_initial(), params.t_final(), steps + 1);
  StateTrajectory traj;
  traj.steps = steps;
  const std::size_t recorded = static_cast<std::size_t>(steps / stride) + 2;
  traj.grid.reserve(recorded);
  traj.states.reserve(recorded);
  traj.populations.reserve(recorded);

  auto record = [&](double t, const Vec3& psi) {
    traj.grid.push_back(t);
    traj.states.push_back(psi);
    traj.populations.push_back({std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2))});
    traj.norm_drift = std::max(traj.norm_drift, std::abs(psi.norm() - 1.0));
  };

  Vec3 psi = psi0.amplitudes();
  record(grid[0], psi);
  Mat3 h_left = h(grid[0]);
  for (int k = 0; k < steps; ++k) {
    const double t = grid[k];
    const double dt = grid[k + 1] - t;
    const Mat3 h_mid = h(t + 0.5 * dt);
    const Mat3 h_right = h(grid[k + 1]);

    const Vec3 k1 = -kI * (h_left * psi);
    const Vec3 k2 = -kI * (h_mid * (psi + 0.5 * dt * k1));
    const Vec3 k3 = -kI * (h_mid * (psi + 0.5 * dt * k2));
    const Vec3 k4 = -kI * (h_right * (psi + dt * k3));
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_left = h_right;

    if ((k + 1) % stride == 0 || k + 1 == steps) {
      record(grid[k + 1], psi);
    } else {
      traj.norm_drift = std::max(traj.norm_drift, std::abs(psi.norm() - 1.0));
    }
  }

  if (!(traj.norm_drift <= kNormDriftLimit)) {
    throw IntegrationError("norm drift " + std::to_string(traj.norm_drift) + " exceeds " +
                           std::to_string(kNormDriftLimit) + " at " + std::to_string(steps) +
                           " steps; raise the step count");
  }
  return traj;
}

StateTrajectory evolve(const ScheduleParams& params, const QuantumState& psi0, int steps, int stride) {
  params.validate();
  if (steps < 1000) throw DomainError("evolve needs steps >= 1000, got " + std::to_string(steps));
  return integrate(params, psi0, steps, [&](double t) { return hamiltonian(synthesize(params, t)); }, stride);
}

int required_steps(const ScheduleParams& params, int base_steps, double max_phase_per_step) {
  if (!(max_phase_per_step > 0.0)) throw DomainError("max_phase_per_step must be positive");
  const Waveforms w = sample_waveforms(params, 4001);
  double peak = 0.0;
  for (const auto& c : w.samples) {
    const double bound = 0.5 * (std::abs(c.omega_p) + std::abs(c.omega_s)) + std::abs(c.delta1) + std::abs(c.delta2);
    peak = std::max(peak, bound);
  }
  const double needed = std::ceil(params.T * peak / max_phase_per_step);
  return std::max(base_steps, static_cast<int>(std::min(needed, 1e9)));
}

FrameBasis path_frame(const ScheduleParams& params, double t) {
  const ScheduleSample s = evaluate(params, t);
  return lambda_frame(s.theta, s.gamma, params.phi, -params.phi, {s.theta_dot, s.gamma_dot, 0.0, 0.0});
}

QuantumState path_start_state(const ScheduleParams& params) {
  return QuantumState(path_frame(params, params.t_initial()).phi[0]);
}

std::vector<PathFidelity> path_fidelity(const StateTrajectory& traj, const ScheduleParams& params) {
  std::vector<PathFidelity> out;
  out.reserve(traj.grid.size());
  for (std::size_t k = 0; k < traj.grid.size(); ++k) {
    const double t = traj.grid[k];
    const Vec3 path = path_frame(params, t).phi[0];
    const double p_d = std::norm(path.dot(traj.states[k]));
    out.push_back({t, p_d, std::log10(std::max(1.0 - p_d, kFidelityFloor))});
  }
  return out;
}

double DecouplingResidual::max_abs() const { return std::max(std::abs(r1), std::abs(r2)); }

Mat3 rotating_frame_hamiltonian(const FrameBasis& frame, const Mat3& h) {
  const Mat3 r = frame.rotation();
  const Mat3 r_dot_adj = frame.rotation_dot().adjoint();
  return r * h * r.adjoint() - kI * (r * r_dot_adj);
}

DecouplingResidual decoupling_residual(const FrameBasis& frame, const Mat3& h, double t) {
  const Mat3 h1 = rotating_frame_hamiltonian(frame, h);
  return {t, h1(1, 0), h1(2, 0)};
}

DecouplingResidual decoupling_residual(const ScheduleParams& params, double t) {
  const ControlSample c = synthesize(params, t);
  return decoupling_residual(path_frame(params, t), hamiltonian(c), t);
}

std::vector<double> phase_consistency(const StateTrajectory& traj, const ScheduleParams& params) {
  const std::vector<double> beta = global_phase_profile(params, traj.grid);
  std::vector<double> out(traj.grid.size());
  for (std::size_t k = 0; k < traj.grid.size(); ++k) {
    const Vec3 path = path_frame(params, traj.grid[k]).phi[0];
    out[k] = (traj.states[k] - std::polar(1.0, beta[k]) * path).norm();
  }
  return out;
}

DarkStateReport dark_state_analysis(double gamma0, double tau1, int grid_points, double T) {
  if (grid_points < 2) throw DomainError("dark_state_analysis needs at least 2 grid points");
  ScheduleParams params;
  params.T = T;
  params.tau1 = tau1;
  params.tau2 = 0.25 * T;
  params.gamma0 = gamma0;
  params.phi = 0.5 * std::numbers::pi;
  params.mixing = MixingProfile::Constant;
  params.validate();

  DarkStateReport report;
  report.adiabaticity = std::numbers::sqrt2 / std::tan(gamma0);
  Eigen::SelfAdjointEigenSolver<Mat3> solver;
  for (double t : uniform_grid(params.t_initial(), params.t_final(), grid_points)) {
    const ScheduleSample s = evaluate(params, t);
    solver.compute(hamiltonian(synthesize(params, t)));
    const FrameBasis frame = path_frame(params, t);

    DarkStateRow row;
    row.t = t;
    row.splitting = s.theta_dot / std::tan(gamma0);
    int dark = 0;
    for (int i = 0; i < 3; ++i) {
      row.eigenvalues[i] = solver.eigenvalues()(i);
      if (std::abs(row.eigenvalues[i]) < std::abs(row.eigenvalues[dark])) dark = i;
      for (int n = 0; n < 3; ++n) row.overlaps(i, n) = std::abs(solver.eigenvectors().col(i).dot(frame.phi[n]));
    }
    row.dark_overlap = row.overlaps(dark, 0);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace sta
