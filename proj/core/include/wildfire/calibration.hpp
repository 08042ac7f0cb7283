#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "wildfire/grid.hpp"
#include "wildfire/propagation.hpp"

namespace wildfire {

/// Target unsuppressed burned fraction at the horizon for each preset.
double preset_target_fraction(SpreadPreset preset);

/// Fraction of cells that have burned at any time within `horizon` minutes of
/// an unsuppressed run. Uses the world stream of `seed`.
double burned_fraction(const Scenario& scenario, const PropagationParams& params, std::uint64_t seed,
                       int horizon = 120);

/// Mean burned fraction over seeds.
double mean_burned_fraction(const Scenario& scenario, PropagationParams params, double p0,
                            const std::vector<std::uint64_t>& seeds, int horizon = 120);

struct CalibrationConfig {
  double lo = 0.001;
  double hi = 0.5;
  double tolerance = 0.02;
  std::vector<std::uint64_t> seeds;
  int horizon = 120;
  int max_iterations = 40;

  void validate() const;
};

/// Bisection on p0 until the mean burned fraction is within tolerance of
/// target. Returns lo when lo already satisfies the target. Throws
/// CalibrationError when [lo, hi] does not bracket the target.
double calibrate_spread(const Scenario& scenario, double target, const CalibrationConfig& cfg);

using SpreadTable = std::map<SpreadPreset, double>;

void write_spread_table(std::ostream& out, const SpreadTable& table);
SpreadTable read_spread_table(std::istream& in);
void write_spread_table(const std::filesystem::path& path, const SpreadTable& table);

}  // namespace wildfire
