#pragma once

// Subcommands of the `sta` tool. Each writes one plot-ready CSV into the
// configured output directory and prints a short summary.

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "sta/config.hpp"
#include "sta/control.hpp"
#include "sta/random.hpp"

namespace sta {

enum ExitCode : int { kExitOk = 0, kExitInvariant = 1, kExitConfig = 2 };

enum class Command { Design, Simulate, Verify, Metrics, SweepSystematic, SweepAmplitude, AdiabaticRef };

std::optional<Command> parse_command(std::string_view name);
const std::vector<std::string_view>& command_names();

struct PhysicalScale {
  double omega0_max_physical = 0.0;  ///< rad/s
  double T_physical = 0.0;           ///< s
};

/// T_physical = time_scale / omega0_max_physical. Throws DomainError for nonpositive input.
PhysicalScale physical_units(const PulseMetrics& metrics, double omega0_max_physical);

/// Uniform draw inside the open ranges tau1 in (0, 0.12)T, tau2 in (0.2, 0.3)T,
/// gamma0 in (0, pi/2), phi in (0, pi/2), consumed in that order.
ScheduleParams draw_schedule(Lcg64& rng, double T = 1.0);

struct DrawReport {
  ScheduleParams params;
  int steps = 0;
  double max_infidelity = 0.0;  ///< max_t [1 - P_d(t)]
  double max_epsilon = 0.0;     ///< log10 of the above, floored at 1e-16
  double max_residual = 0.0;    ///< max over 101 interior times of |<phi_{1,2}|H1|phi0>|
  double omega0_max = 0.0;

  double relative_residual() const { return max_residual / omega0_max; }
};

/// Path tracking from |g> and decoupling residuals for one parameter set. The
/// step count is raised above `base_steps` as required_steps() demands.
DrawReport verify_schedule(const ScheduleParams& params, int base_steps, int grid_size = kDefaultGridSize);

/// verify_schedule over `count` draws from Lcg64(seed), in draw order.
std::vector<DrawReport> verify_draws(std::uint64_t seed, int count, int base_steps, double T = 1.0,
                                     int workers = 0);

/// Path-tracking bound applied by `verify`.
inline constexpr double kPathInfidelityLimit = 5e-3;
/// Decoupling bound relative to the peak envelope.
inline constexpr double kResidualLimit = 1e-9;

/// Runs `command`. Files go to config.output_dir (created if missing).
/// Returns kExitOk, kExitInvariant on any library error, kExitConfig on a bad
/// command or configuration.
int run(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sta
