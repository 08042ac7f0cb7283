#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "wildfire/grid.hpp"
#include "wildfire/scenario_io.hpp"

namespace wildfire {

enum class TerrainKind { flat, hills, file };

/// Axis-aligned block of high-value cells, inclusive bounds.
struct ResourceArea {
  int row0 = 0, col0 = 0, row1 = 0, col1 = 0;
  double value = 10.0;
};

struct HillSpec {
  double row = 0.0, col = 0.0;  // centre in cells
  double height_m = 0.0;
  double sigma_cells = 1.0;
};

/// Generator parameters of a benchmark case. Case 4 reads a scenario
/// directory instead of generating grids.
struct CaseDefinition {
  int id = 1;
  TerrainKind terrain = TerrainKind::flat;
  std::vector<HillSpec> hills;
  std::vector<ResourceArea> areas;
  WindPhase wind{};                        // initial phase
  std::optional<int> wind_shift_minute;    // second phase drawn from the seed
  double shift_min_deg = 90.0;             // shift relative to the initial heading
  double shift_max_deg = 270.0;
  int uniform_fuel = 10;
  std::optional<SpreadPreset> preset;      // overrides the generated/file preset
  std::filesystem::path data_dir = "data/case4";

  /// Canonical definition of case 1..4. Throws ConfigError otherwise.
  static CaseDefinition standard(int id);
};

/// Builds the scenario of a case. Only case 2's wind shift depends on seed.
/// Case 4 errors name the missing or malformed layer (FileFormatError).
Scenario build_case(const CaseDefinition& def, std::uint64_t seed);

/// Same as build_case but also returns file-provided parameter overrides.
ScenarioBundle build_case_bundle(const CaseDefinition& def, std::uint64_t seed);

}  // namespace wildfire
