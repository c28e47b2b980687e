#include "sta/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sta/error.hpp"

namespace sta {

namespace {

constexpr cplx kI{0.0, 1.0};

Mat3 commutator(const Mat3& a, const Mat3& b) { return a * b - b * a; }

double trace_defect_of(const Mat3& m) { return std::abs(m.trace() - 1.0); }
double hermiticity_defect_of(const Mat3& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double min_eigenvalue_of(const Mat3& m) {
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Mat3 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat3> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace

DensityMatrix::DensityMatrix(Mat3 entries) : m_(std::move(entries)) {
  if (!(hermiticity_defect() <= kHermiticityTolerance)) {
    throw InvariantViolation("density matrix is not Hermitian: defect " + std::to_string(hermiticity_defect()));
  }
  if (!(trace_defect() <= kTraceTolerance)) {
    throw InvariantViolation("density matrix trace differs from 1 by " + std::to_string(trace_defect()));
  }
  if (!(min_eigenvalue() >= -kPositivityTolerance)) {
    throw InvariantViolation("density matrix has negative eigenvalue " + std::to_string(min_eigenvalue()));
  }
}

DensityMatrix DensityMatrix::pure(const QuantumState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::trace_defect() const { return trace_defect_of(m_); }
double DensityMatrix::hermiticity_defect() const { return hermiticity_defect_of(m_); }
double DensityMatrix::min_eigenvalue() const { return min_eigenvalue_of(m_); }

double systematic_evolve(const ScheduleParams& params, double lambda, const QuantumState& psi0, int steps) {
  params.validate();
  if (steps < 1000) throw DomainError("systematic_evolve needs steps >= 1000, got " + std::to_string(steps));
  const StateTrajectory traj = integrate(
      params, psi0, steps,
      [&](double t) {
        const ControlSample c = synthesize(params, t);
        ControlSample couplings;
        couplings.omega_p = c.omega_p;
        couplings.omega_s = c.omega_s;
        const Mat3 error = hamiltonian(couplings);
        return Mat3(hamiltonian(c) + lambda * error);
      },
      steps);
  return traj.final_population(kTarget);
}

SweepResult systematic_sweep(const ScheduleParams& params, std::span<const double> lambda_grid, int steps,
                             int workers) {
  if (lambda_grid.empty()) throw DomainError("systematic_sweep needs a nonempty lambda grid");
  params.validate();
  SweepResult r;
  r.axis_name = "lambda";
  r.axis_values.assign(lambda_grid.begin(), lambda_grid.end());
  r.params = params;
  const QuantumState ground = QuantumState::basis(kGround);
  r.final_populations = parallel_map(lambda_grid.size(), workers, [&](std::size_t i) {
    return systematic_evolve(params, lambda_grid[i], ground, steps);
  });
  return r;
}

Mat3 master_rhs(const Mat3& rho, const ControlSample& sample, double eta) {
  const Mat3 h0 = hamiltonian(sample);
  Mat3 out = -kI * commutator(h0, rho);
  if (eta != 0.0) {
    ControlSample pump;
    pump.omega_p = sample.omega_p;
    ControlSample stokes;
    stokes.omega_s = sample.omega_s;
    const Mat3 hp = hamiltonian(pump);
    const Mat3 hs = hamiltonian(stokes);
    const double rate = 0.5 * eta * eta;
    out -= rate * commutator(hp, commutator(hp, rho));
    out -= rate * commutator(hs, commutator(hs, rho));
  }
  return out;
}

Mat3 master_rhs(const DensityMatrix& rho, const ControlSample& sample, double eta) {
  return master_rhs(rho.entries(), sample, eta);
}

DensityEvolution evolve_density(const ScheduleParams& params, double eta, const DensityMatrix& rho0, int steps) {
  params.validate();
  if (steps < 1000) throw DomainError("evolve_density needs steps >= 1000, got " + std::to_string(steps));
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("eta must be finite and nonnegative");

  const std::vector<double> grid = uniform_grid(params.t_initial(), params.t_final(), steps + 1);
  Mat3 rho = rho0.entries();
  double max_trace = trace_defect_of(rho);
  double max_herm = hermiticity_defect_of(rho);

  ControlSample left = synthesize(params, grid[0]);
  for (int k = 0; k < steps; ++k) {
    const double t = grid[k];
    const double dt = grid[k + 1] - t;
    const ControlSample mid = synthesize(params, t + 0.5 * dt);
    const ControlSample right = synthesize(params, grid[k + 1]);

    const Mat3 k1 = master_rhs(rho, left, eta);
    const Mat3 k2 = master_rhs(Mat3(rho + 0.5 * dt * k1), mid, eta);
    const Mat3 k3 = master_rhs(Mat3(rho + 0.5 * dt * k2), mid, eta);
    const Mat3 k4 = master_rhs(Mat3(rho + dt * k3), right, eta);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    left = right;

    max_trace = std::max(max_trace, trace_defect_of(rho));
    max_herm = std::max(max_herm, hermiticity_defect_of(rho));
    if (!(max_trace <= kTraceTolerance) || !(max_herm <= kHermiticityTolerance)) {
      throw IntegrationError("density matrix invariants breached at t/T = " +
                             std::to_string(grid[k + 1] / params.T) + " (trace drift " +
                             std::to_string(max_trace) + ", Hermiticity defect " + std::to_string(max_herm) +
                             "); raise the step count");
    }
  }

  const double min_eig = min_eigenvalue_of(rho);
  if (!(min_eig >= -kPositivityTolerance)) {
    throw IntegrationError("final density matrix has eigenvalue " + std::to_string(min_eig) +
                           "; raise the step count");
  }
  DensityMatrix final_state(rho);
  const double p_e = final_state.population(kTarget);
  return {std::move(final_state), p_e, max_trace, max_herm, min_eig};
}

SweepResult amplitude_sweep(const ScheduleParams& params, std::span<const double> eta_grid, int steps,
                            int workers) {
  if (eta_grid.empty()) throw DomainError("amplitude_sweep needs a nonempty eta grid");
  params.validate();
  SweepResult r;
  r.axis_name = "eta";
  r.axis_values.assign(eta_grid.begin(), eta_grid.end());
  r.params = params;
  const DensityMatrix ground = DensityMatrix::pure(QuantumState::basis(kGround));
  r.final_populations = parallel_map(eta_grid.size(), workers, [&](std::size_t i) {
    return evolve_density(params, eta_grid[i], ground, steps).p_e;
  });
  return r;
}

}  // namespace sta
