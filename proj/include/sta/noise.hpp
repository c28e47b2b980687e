#pragma once

// Robustness of the designed transfer against a systematic miscalibration of
// both Rabi frequencies and against white amplitude noise on each channel.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <thread>
#include <type_traits>
#include <string>
#include <vector>

#include "sta/dynamics.hpp"

namespace sta {

inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-9;

/// 3x3 density matrix, Hermitian with unit trace and no eigenvalue below -1e-9.
class DensityMatrix {
 public:
  /// Throws InvariantViolation if any invariant fails.
  explicit DensityMatrix(Mat3 entries);

  static DensityMatrix pure(const QuantumState& psi);

  const Mat3& entries() const { return m_; }
  double population(Level level) const { return m_(level, level).real(); }

  double trace_defect() const;        ///< |tr rho - 1|
  double hermiticity_defect() const;  ///< max |rho - rho^dagger|
  double min_eigenvalue() const;

 private:
  Mat3 m_;
};

/// P_e(t_f) under H0 + lambda Hs, Hs = (1/2)[Omega_p |a><g| + Omega_s |a><e|] + h.c.
/// Detunings are not perturbed.
double systematic_evolve(const ScheduleParams& params, double lambda, const QuantumState& psi0,
                         int steps = kDefaultSteps);

struct SweepResult {
  std::string axis_name;  ///< "lambda" or "eta"
  std::vector<double> axis_values;
  std::vector<double> final_populations;  ///< P_e(t_f) per axis value
  ScheduleParams params;
};

/// Evaluates fn(0..n-1) on `workers` threads (0 = hardware concurrency) and
/// returns results in index order. Index i always runs on thread i mod workers,
/// so results do not depend on scheduling. Exceptions are rethrown for the
/// lowest failing index.
template <typename Fn>
auto parallel_map(std::size_t n, int workers, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<Result>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));

  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += threads) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// systematic_evolve from |g> at every lambda, in input order.
SweepResult systematic_sweep(const ScheduleParams& params, std::span<const double> lambda_grid,
                             int steps = kDefaultSteps, int workers = 0);

/// d rho/dt = -i[H0, rho] - (eta^2/2)[Hp,[Hp,rho]] - (eta^2/2)[Hs,[Hs,rho]]
/// with Hp = (1/2) Omega_p |a><g| + h.c. and Hs = (1/2) Omega_s |a><e| + h.c.
/// eta carries units of sqrt(time).
Mat3 master_rhs(const Mat3& rho, const ControlSample& sample, double eta);
Mat3 master_rhs(const DensityMatrix& rho, const ControlSample& sample, double eta);

struct DensityEvolution {
  DensityMatrix final_state;
  double p_e = 0.0;  ///< <e|rho(t_f)|e>
  double max_trace_drift = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;  ///< of rho(t_f)
};

/// RK4 of master_rhs over [-T/2, T/2]; steps >= 1000. Trace and Hermiticity are
/// checked at every step and positivity at t_f. Nothing is projected: a breach
/// throws IntegrationError.
DensityEvolution evolve_density(const ScheduleParams& params, double eta, const DensityMatrix& rho0,
                                int steps = kDefaultSteps);

/// evolve_density from |g><g| at every eta, in input order.
SweepResult amplitude_sweep(const ScheduleParams& params, std::span<const double> eta_grid,
                            int steps = kDefaultSteps, int workers = 0);

}  // namespace sta
