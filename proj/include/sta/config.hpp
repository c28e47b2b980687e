#pragma once

// Flat `key = value` run configuration for the command-line tool.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sta/schedule.hpp"

namespace sta {

struct RunConfig {
  // schedule.*  (angles in units of pi, widths in units of T)
  double gamma0_pi = 0.15;
  double tau1_T = 0.12;
  double tau2_T = 0.3;
  double phi_pi = 0.5;
  double T = 1.0;
  // integrator.*
  int steps = 4000;
  int grid_size = 4001;
  // sweep.*  (eta in units of sqrt(T))
  double lambda_min = -0.2;
  double lambda_max = 0.2;
  int lambda_count = 41;
  double eta_min = 0.0;
  double eta_max = 0.3;
  int eta_count = 31;
  int workers = 0;
  // metrics.*
  double metrics_gamma0_min_pi = 0.05;
  double metrics_gamma0_max_pi = 0.45;
  int metrics_gamma0_count = 41;
  // verify.*
  int verify_draws = 50;
  // physical.*  (cycles per ns; multiplied by 2 pi for the angular frequency)
  double omega0_max_ghz = 0.16;

  std::uint64_t seed = 42;
  std::string output_dir = ".";

  ScheduleParams schedule() const;
  std::vector<double> lambda_grid() const;
  std::vector<double> eta_grid() const;  ///< physical eta = eta_sqrtT * sqrt(T)
  std::vector<double> metrics_gamma0_grid() const;

  /// Cross-field checks (orderings, schedule ranges). Throws ConfigError.
  void validate() const;
};

/// All accepted keys, in documentation order.
const std::vector<std::string>& config_keys();

/// Sets one key from its textual value. Throws ConfigError naming `line`
/// (when > 0) for an unknown key, a malformed number or an out-of-range value.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value, int line = 0);

/// Parses `key = value` lines; `#` starts a comment; blank lines are ignored.
/// Missing keys keep their defaults. The result is fully validated.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file. Throws ConfigError if it cannot be opened.
RunConfig load_config(const std::string& path);

}  // namespace sta
