#include "wildfire/calibration.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "wildfire/rng.hpp"

namespace wildfire {

namespace {

// Same derivation as the episode's world stream.
constexpr std::uint64_t world_stream(std::uint64_t seed) { return hash_combine(seed, 1); }

}  // namespace

double preset_target_fraction(SpreadPreset preset) {
  switch (preset) {
    case SpreadPreset::slow: return 0.05;
    case SpreadPreset::moderate: return 0.25;
    case SpreadPreset::rapid: return 0.50;
    case SpreadPreset::ultrarapid: return 0.85;
  }
  throw ConfigError("unknown spread preset");
}

double burned_fraction(const Scenario& scenario, const PropagationParams& params, std::uint64_t seed,
                       int horizon) {
  const KernelSet kernels(scenario, params);
  Rng rng(world_stream(seed));
  WorldState world = initial_world(scenario);
  BoolGrid ever = world.burning;
  for (int t = 0; t < horizon; ++t) {
    world = step(world, nullptr, params, kernels, rng);
    for (int i = 0; i < kCellCount; ++i) ever.flat(i) |= world.burning.flat(i);
  }
  return static_cast<double>(burning_count(ever)) / kCellCount;
}

double mean_burned_fraction(const Scenario& scenario, PropagationParams params, double p0,
                            const std::vector<std::uint64_t>& seeds, int horizon) {
  params.p0 = p0;
  double sum = 0.0;
  for (auto seed : seeds) sum += burned_fraction(scenario, params, seed, horizon);
  return sum / static_cast<double>(seeds.size());
}

void CalibrationConfig::validate() const {
  if (!(lo > 0.0 && lo < hi && hi <= 1.0)) throw ConfigError("calibration range must satisfy 0 < lo < hi <= 1");
  if (!(tolerance > 0.0)) throw ConfigError("calibration tolerance must be positive");
  if (seeds.empty()) throw ConfigError("calibration needs at least one seed");
  if (horizon < 1) throw ConfigError("calibration horizon must be positive");
  if (max_iterations < 1) throw ConfigError("calibration needs at least one iteration");
}

double calibrate_spread(const Scenario& scenario, double target, const CalibrationConfig& cfg) {
  cfg.validate();
  if (!(target >= 0.0 && target < 1.0)) throw ConfigError("calibration target must lie in [0, 1)");
  const PropagationParams base = PropagationParams::defaults_for(scenario);
  auto response = [&](double p0) { return mean_burned_fraction(scenario, base, p0, cfg.seeds, cfg.horizon); };

  double lo = cfg.lo, hi = cfg.hi;
  const double f_lo = response(lo);
  if (std::abs(f_lo - target) <= cfg.tolerance) return lo;
  if (f_lo > target) {
    throw CalibrationError("burned fraction " + std::to_string(f_lo) + " at p0 = " + std::to_string(lo) +
                           " already exceeds the target");
  }
  const double f_hi = response(hi);
  if (std::abs(f_hi - target) <= cfg.tolerance) return hi;
  if (f_hi < target) {
    throw CalibrationError("burned fraction " + std::to_string(f_hi) + " at p0 = " + std::to_string(hi) +
                           " stays below the target");
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < cfg.max_iterations; ++i) {
    mid = 0.5 * (lo + hi);
    const double f = response(mid);
    if (std::abs(f - target) <= cfg.tolerance) return mid;
    (f < target ? lo : hi) = mid;
  }
  return mid;
}

void write_spread_table(std::ostream& out, const SpreadTable& table) {
  out << "# preset = p0\n";
  for (const auto& [preset, p0] : table) out << to_string(preset) << " = " << std::setprecision(6) << p0 << '\n';
}

SpreadTable read_spread_table(std::istream& in) {
  SpreadTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FileFormatError("spread table line " + std::to_string(line_no) + ": no '='");
    std::istringstream key_in(line.substr(0, eq)), value_in(line.substr(eq + 1));
    std::string key;
    double value = 0.0;
    key_in >> key;
    if (!(value_in >> value)) throw FileFormatError("spread table line " + std::to_string(line_no) + ": bad p0");
    try {
      table[parse_spread_preset(key)] = value;
    } catch (const ConfigError& e) {
      throw FileFormatError("spread table line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

void write_spread_table(const std::filesystem::path& path, const SpreadTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_spread_table(out, table);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace wildfire
