#include "sta/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "sta/control.hpp"
#include "sta/error.hpp"

namespace sta {

namespace {

using std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) + "' is not a finite number", line);
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view text, int line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) + "' is not an integer", line);
  }
  return v;
}

struct Range {
  double lo;
  double hi;
  bool lo_open;
};

void require(std::string_view key, double v, Range r, int line) {
  const bool ok = (r.lo_open ? v > r.lo : v >= r.lo) && v <= r.hi;
  if (!ok) {
    std::ostringstream os;
    os.precision(12);
    os << "key '" << key << "': value " << v << " outside " << (r.lo_open ? "(" : "[") << r.lo << ", " << r.hi
       << "]";
    throw ConfigError(os.str(), line);
  }
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view, int)>;

Setter real(double RunConfig::*field, Range r) {
  return [field, r](RunConfig& c, std::string_view key, std::string_view text, int line) {
    const double v = parse_double(key, text, line);
    require(key, v, r, line);
    c.*field = v;
  };
}

Setter count(int RunConfig::*field, long long lo, long long hi) {
  return [field, lo, hi](RunConfig& c, std::string_view key, std::string_view text, int line) {
    const long long v = parse_integer(key, text, line);
    if (v < lo || v > hi) {
      throw ConfigError("key '" + std::string(key) + "': value " + std::to_string(v) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]",
                        line);
    }
    c.*field = static_cast<int>(v);
  };
}

constexpr double kHuge = 1e300;
constexpr long long kMaxCount = 100000000;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"schedule.gamma0_pi", real(&RunConfig::gamma0_pi, {0.0, 0.5 - 1e-15, true})},
      {"schedule.tau1_T", real(&RunConfig::tau1_T, {0.0, 0.12, true})},
      {"schedule.tau2_T", real(&RunConfig::tau2_T, {0.2, 0.3, false})},
      {"schedule.phi_pi", real(&RunConfig::phi_pi, {0.0, 0.5, true})},
      {"schedule.T", real(&RunConfig::T, {0.0, kHuge, true})},
      {"integrator.steps", count(&RunConfig::steps, 1000, kMaxCount)},
      {"integrator.grid_size", count(&RunConfig::grid_size, 512, kMaxCount)},
      {"sweep.lambda_min", real(&RunConfig::lambda_min, {-kHuge, kHuge, false})},
      {"sweep.lambda_max", real(&RunConfig::lambda_max, {-kHuge, kHuge, false})},
      {"sweep.lambda_count", count(&RunConfig::lambda_count, 2, kMaxCount)},
      {"sweep.eta_min", real(&RunConfig::eta_min, {0.0, kHuge, false})},
      {"sweep.eta_max", real(&RunConfig::eta_max, {0.0, kHuge, false})},
      {"sweep.eta_count", count(&RunConfig::eta_count, 2, kMaxCount)},
      {"sweep.workers", count(&RunConfig::workers, 0, 4096)},
      {"metrics.gamma0_min_pi", real(&RunConfig::metrics_gamma0_min_pi, {0.0, 0.5 - 1e-15, true})},
      {"metrics.gamma0_max_pi", real(&RunConfig::metrics_gamma0_max_pi, {0.0, 0.5 - 1e-15, true})},
      {"metrics.gamma0_count", count(&RunConfig::metrics_gamma0_count, 2, kMaxCount)},
      {"verify.draws", count(&RunConfig::verify_draws, 1, kMaxCount)},
      {"physical.omega0_max_ghz", real(&RunConfig::omega0_max_ghz, {0.0, kHuge, true})},
      {"seed",
       [](RunConfig& c, std::string_view key, std::string_view text, int line) {
         std::uint64_t v = 0;
         const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
         if (ec != std::errc() || ptr != text.data() + text.size()) {
           throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) +
                                 "' is not an unsigned 64-bit integer",
                             line);
         }
         c.seed = v;
       }},
      {"output_dir",
       [](RunConfig& c, std::string_view key, std::string_view text, int line) {
         if (text.empty()) throw ConfigError("key '" + std::string(key) + "' must not be empty", line);
         c.output_dir = std::string(text);
       }},
  };
  return table;
}

}  // namespace

ScheduleParams RunConfig::schedule() const {
  ScheduleParams p;
  p.T = T;
  p.tau1 = tau1_T * T;
  p.tau2 = tau2_T * T;
  p.gamma0 = gamma0_pi * pi;
  p.phi = phi_pi * pi;
  return p;
}

std::vector<double> RunConfig::lambda_grid() const { return uniform_grid(lambda_min, lambda_max, lambda_count); }

std::vector<double> RunConfig::eta_grid() const {
  std::vector<double> g = uniform_grid(eta_min, eta_max, eta_count);
  for (double& v : g) v *= std::sqrt(T);
  return g;
}

std::vector<double> RunConfig::metrics_gamma0_grid() const {
  std::vector<double> g = uniform_grid(metrics_gamma0_min_pi, metrics_gamma0_max_pi, metrics_gamma0_count);
  for (double& v : g) v *= pi;
  return g;
}

void RunConfig::validate() const {
  if (lambda_min > lambda_max) throw ConfigError("sweep.lambda_min must not exceed sweep.lambda_max");
  if (eta_min > eta_max) throw ConfigError("sweep.eta_min must not exceed sweep.eta_max");
  if (metrics_gamma0_min_pi > metrics_gamma0_max_pi) {
    throw ConfigError("metrics.gamma0_min_pi must not exceed metrics.gamma0_max_pi");
  }
  try {
    schedule().validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value, int line) {
  for (const auto& [name, set] : setters()) {
    if (name == key) {
      set(config, key, value, line);
      return;
    }
  }
  throw ConfigError("unknown key '" + std::string(key) + "'", line);
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (auto it = seen.find(key); it != seen.end()) {
      throw ConfigError("key '" + std::string(key) + "' already set on line " + std::to_string(it->second), line_no);
    }
    apply_setting(config, key, value, line_no);
    seen.emplace(std::string(key), line_no);
  }
  config.validate();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace sta
