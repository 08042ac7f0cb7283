#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "wildfire/grid.hpp"
#include "wildfire/propagation.hpp"
#include "wildfire/uav.hpp"

namespace wildfire {

/// A scenario directory: fuel.csv, elevation.csv, resources.csv and
/// scenario.txt. Optional parameter keys in scenario.txt override defaults.
struct ScenarioBundle {
  Scenario scenario;
  std::map<std::string, double> overrides;  // propagation/penalty/ranging keys

  PropagationParams propagation() const;
  PenaltyParams penalties() const;
  RangingParams ranging() const;
};

/// Reads kGridSize rows of kGridSize comma-separated numbers. `layer` names
/// the grid in error messages.
RealGrid read_grid_csv(std::istream& in, const std::string& layer);
void write_grid_csv(std::ostream& out, const RealGrid& grid, int precision = 6);

/// Parses the flat `key = value` scenario file into `bundle`; grids are left
/// untouched.
void parse_scenario_keys(std::istream& in, ScenarioBundle& bundle);
void write_scenario_keys(std::ostream& out, const ScenarioBundle& bundle);

ScenarioBundle load_scenario_dir(const std::filesystem::path& dir);
void write_scenario_dir(const ScenarioBundle& bundle, const std::filesystem::path& dir);

}  // namespace wildfire
