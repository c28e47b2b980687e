#include "sta/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <string>

#include "sta/csv.hpp"
#include "sta/dynamics.hpp"
#include "sta/error.hpp"
#include "sta/noise.hpp"

namespace sta {

namespace {

using std::numbers::pi;

constexpr int kInteriorSamples = 101;
constexpr std::size_t kMaxRecorded = 20000;

std::string output_path(const RunConfig& c, const char* name) {
  return (std::filesystem::path(c.output_dir) / name).string();
}

void write_sweep(const SweepResult& r, const std::string& path, const char* axis_column, double axis_scale) {
  CsvWriter csv(path, {axis_column, "P_e_final"});
  for (std::size_t i = 0; i < r.axis_values.size(); ++i) {
    csv.row({r.axis_values[i] / axis_scale, r.final_populations[i]});
  }
}

int cmd_design(const RunConfig& c, std::ostream& out) {
  const ScheduleParams p = c.schedule();
  const Waveforms w = sample_waveforms(p, c.grid_size);
  CsvWriter csv(output_path(c, "waveforms.csv"), {"t_over_T", "omega_p", "omega_s", "delta1", "delta2"});
  for (const auto& s : w.samples) {
    csv.row({s.t / p.T, s.omega_p * p.T, s.omega_s * p.T, s.delta1 * p.T, s.delta2 * p.T});
  }
  const PulseMetrics m = pulse_metrics(p, c.grid_size);
  const PhysicalScale phys = physical_units(m, 2.0 * pi * c.omega0_max_ghz * 1e9);
  out << "T_omega0_max=" << format_number(m.time_scale) << "\n"
      << "area_over_pi=" << format_number(m.area_over_pi()) << "\n"
      << "T_physical_ns=" << format_number(phys.T_physical * 1e9) << "\n";
  return kExitOk;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const ScheduleParams p = c.schedule();
  const StateTrajectory traj = evolve(p, QuantumState::basis(kGround), c.steps);
  const std::vector<PathFidelity> fid = path_fidelity(traj, p);
  CsvWriter csv(output_path(c, "trajectory.csv"), {"t_over_T", "P_g", "P_a", "P_e", "P_d", "epsilon"});
  for (std::size_t k = 0; k < traj.grid.size(); ++k) {
    const auto& pop = traj.populations[k];
    csv.row({traj.grid[k] / p.T, pop[0], pop[1], pop[2], fid[k].p_d, fid[k].epsilon});
  }
  out << "P_e(t_f)=" << format_number(traj.final_population(kTarget)) << "\n"
      << "norm_drift=" << format_number(traj.norm_drift) << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::vector<DrawReport> reports = verify_draws(c.seed, c.verify_draws, c.steps, c.T, c.workers);
  CsvWriter fig2(output_path(c, "fig2.csv"), {"draw", "max_epsilon"});
  CsvWriter detail(output_path(c, "draws.csv"), {"draw", "tau1_T", "tau2_T", "gamma0_pi", "phi_pi", "steps",
                                                  "max_infidelity", "residual_over_omega0_max"});
  double worst_eps = -16.0;
  double worst_residual = 0.0;
  int tracking_failures = 0;
  int residual_failures = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const DrawReport& r = reports[i];
    const double idx = static_cast<double>(i);
    fig2.row({idx, r.max_epsilon});
    detail.row({idx, r.params.tau1 / c.T, r.params.tau2 / c.T, r.params.gamma0 / pi, r.params.phi / pi,
                static_cast<double>(r.steps), r.max_infidelity, r.relative_residual()});
    worst_eps = std::max(worst_eps, r.max_epsilon);
    worst_residual = std::max(worst_residual, r.relative_residual());
    if (!(r.max_infidelity <= kPathInfidelityLimit)) ++tracking_failures;
    if (!(r.relative_residual() <= kResidualLimit)) ++residual_failures;
  }
  out << "draws=" << reports.size() << "\n"
      << "worst_max_epsilon=" << format_number(worst_eps) << "\n"
      << "worst_residual_over_omega0_max=" << format_number(worst_residual) << "\n";
  if (residual_failures > 0) {
    err << "invariant violated: decoupling residual exceeds 1e-9 * omega0_max in " << residual_failures
        << " draw(s)\n";
  }
  if (tracking_failures > 0) {
    err << "invariant violated: path tracking 1 - P_d exceeds 5e-3 in " << tracking_failures << " draw(s)\n";
  }
  return residual_failures + tracking_failures > 0 ? kExitInvariant : kExitOk;
}

int cmd_metrics(const RunConfig& c, std::ostream& out) {
  ScheduleParams p = c.schedule();
  const std::vector<double> gammas = c.metrics_gamma0_grid();
  const std::vector<PulseMetrics> rows = parallel_map(gammas.size(), c.workers, [&](std::size_t i) {
    ScheduleParams q = p;
    q.gamma0 = gammas[i];
    return pulse_metrics(q, c.grid_size);
  });
  CsvWriter csv(output_path(c, "fig5.csv"), {"gamma0_pi", "T_omega0_max", "area_over_pi"});
  std::size_t best_time = 0, best_area = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv.row({gammas[i] / pi, rows[i].time_scale, rows[i].area_over_pi()});
    if (rows[i].time_scale < rows[best_time].time_scale) best_time = i;
    if (rows[i].area < rows[best_area].area) best_area = i;
  }
  out << "min_T_omega0_max=" << format_number(rows[best_time].time_scale)
      << " at gamma0_pi=" << format_number(gammas[best_time] / pi) << "\n"
      << "min_area_over_pi=" << format_number(rows[best_area].area_over_pi())
      << " at gamma0_pi=" << format_number(gammas[best_area] / pi) << "\n";
  return kExitOk;
}

int cmd_sweep_systematic(const RunConfig& c, std::ostream& out) {
  const std::vector<double> grid = c.lambda_grid();
  const SweepResult r = systematic_sweep(c.schedule(), grid, c.steps, c.workers);
  write_sweep(r, output_path(c, "fig6.csv"), "lambda", 1.0);
  const auto best = std::max_element(r.final_populations.begin(), r.final_populations.end());
  out << "max_P_e=" << format_number(*best)
      << " at lambda=" << format_number(r.axis_values[best - r.final_populations.begin()]) << "\n";
  return kExitOk;
}

int cmd_sweep_amplitude(const RunConfig& c, std::ostream& out) {
  const std::vector<double> grid = c.eta_grid();
  const SweepResult r = amplitude_sweep(c.schedule(), grid, c.steps, c.workers);
  write_sweep(r, output_path(c, "fig7.csv"), "eta_sqrtT", std::sqrt(c.T));
  out << "P_e_first=" << format_number(r.final_populations.front()) << "\n"
      << "P_e_last=" << format_number(r.final_populations.back()) << "\n";
  return kExitOk;
}

int cmd_adiabatic_ref(const RunConfig& c, std::ostream& out) {
  static constexpr double kGammaPi[] = {0.0025, 0.005, 0.01, 0.02, 0.05, 0.1, 0.15};
  const double tau1 = c.tau1_T * c.T;
  const double phi = c.phi_pi * pi;
  CsvWriter csv(output_path(c, "adiabatic_ref.csv"),
                {"gamma0_pi", "area_over_pi", "T_omega0_max_over_pi", "adiabaticity", "numeric_area_over_pi",
                 "numeric_T_omega0_max_over_pi"});
  for (double g : kGammaPi) {
    const AdiabaticReference closed = adiabatic_reference(g * pi, tau1, phi, c.T);
    const AdiabaticReference numeric = adiabatic_reference_numeric(g * pi, tau1, phi, c.T, c.grid_size * 4 - 3);
    csv.row({g, closed.area / pi, closed.time_scale / pi, closed.adiabaticity, numeric.area / pi,
             numeric.time_scale / pi});
  }
  const AdiabaticReference ref = adiabatic_reference(0.01 * pi, tau1, phi, c.T);
  out << "gamma0_pi=0.01 area_over_pi=" << format_number(ref.area / pi)
      << " T_omega0_max_over_pi=" << format_number(ref.time_scale / pi) << "\n";
  return kExitOk;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "design") return Command::Design;
  if (name == "simulate") return Command::Simulate;
  if (name == "verify") return Command::Verify;
  if (name == "metrics") return Command::Metrics;
  if (name == "sweep-systematic") return Command::SweepSystematic;
  if (name == "sweep-amplitude") return Command::SweepAmplitude;
  if (name == "adiabatic-ref") return Command::AdiabaticRef;
  return std::nullopt;
}

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = {"design",           "simulate",        "verify",
                                                      "metrics",          "sweep-systematic", "sweep-amplitude",
                                                      "adiabatic-ref"};
  return names;
}

PhysicalScale physical_units(const PulseMetrics& metrics, double omega0_max_physical) {
  if (!(omega0_max_physical > 0.0)) throw DomainError("physical peak Rabi frequency must be positive");
  return {omega0_max_physical, metrics.time_scale / omega0_max_physical};
}

ScheduleParams draw_schedule(Lcg64& rng, double T) {
  ScheduleParams p;
  p.T = T;
  p.tau1 = rng.uniform(0.0, 0.12) * T;
  p.tau2 = rng.uniform(0.2, 0.3) * T;
  p.gamma0 = rng.uniform(0.0, 0.5 * pi);
  p.phi = rng.uniform(0.0, 0.5 * pi);
  return p;
}

DrawReport verify_schedule(const ScheduleParams& params, int base_steps, int grid_size) {
  DrawReport r;
  r.params = params;
  r.steps = required_steps(params, base_steps);
  const int stride = std::max(1, static_cast<int>(r.steps / kMaxRecorded));
  const StateTrajectory traj = evolve(params, QuantumState::basis(kGround), r.steps, stride);
  for (const PathFidelity& f : path_fidelity(traj, params)) {
    r.max_infidelity = std::max(r.max_infidelity, 1.0 - f.p_d);
  }
  r.max_epsilon = std::log10(std::max(r.max_infidelity, kFidelityFloor));

  r.omega0_max = pulse_metrics(params, grid_size).omega0_max;
  const double ti = params.t_initial();
  for (int k = 1; k <= kInteriorSamples; ++k) {
    const double t = ti + params.T * k / (kInteriorSamples + 1);
    r.max_residual = std::max(r.max_residual, decoupling_residual(params, t).max_abs());
  }
  return r;
}

std::vector<DrawReport> verify_draws(std::uint64_t seed, int count, int base_steps, double T, int workers) {
  Lcg64 rng(seed);
  std::vector<ScheduleParams> draws;
  for (int i = 0; i < count; ++i) draws.push_back(draw_schedule(rng, T));
  return parallel_map(draws.size(), workers, [&](std::size_t i) { return verify_schedule(draws[i], base_steps); });
}

int run(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::optional<Command> cmd = parse_command(command);
  if (!cmd) {
    err << "unknown command '" << command << "'\n";
    return kExitConfig;
  }
  try {
    config.validate();
    std::filesystem::create_directories(config.output_dir);
    switch (*cmd) {
      case Command::Design: return cmd_design(config, out);
      case Command::Simulate: return cmd_simulate(config, out);
      case Command::Verify: return cmd_verify(config, out, err);
      case Command::Metrics: return cmd_metrics(config, out);
      case Command::SweepSystematic: return cmd_sweep_systematic(config, out);
      case Command::SweepAmplitude: return cmd_sweep_amplitude(config, out);
      case Command::AdiabaticRef: return cmd_adiabatic_ref(config, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IntegrationError& e) {
    err << "invariant violated (integration accuracy): " << e.what() << "\n";
    return kExitInvariant;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitInvariant;
}

}  // namespace sta
