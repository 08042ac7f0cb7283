#include "wildfire/cases.hpp"

#include <cmath>
#include <numbers>

#include "wildfire/rng.hpp"

namespace wildfire {

namespace {

constexpr std::uint64_t kCaseSalt = 0xCA5E'0000'0000'0002ULL;
constexpr double kDeg = std::numbers::pi / 180.0;

const ResourceArea kNorthEast{20, 62, 29, 71, 10.0};
const ResourceArea kSouthWest{68, 22, 77, 31, 10.0};
const ResourceArea kSouthEast{62, 70, 71, 79, 10.0};

std::vector<CellIndex> ignition_block() { return {{49, 49}, {49, 50}, {50, 49}, {50, 50}}; }

}  // namespace

CaseDefinition CaseDefinition::standard(int id) {
  CaseDefinition def;
  def.id = id;
  switch (id) {
    case 1:
      def.areas = {kNorthEast};
      def.wind = {45.0 * kDeg, 0.6, std::nullopt};
      break;
    case 2:
      def.areas = {kNorthEast, kSouthWest};
      def.wind = {45.0 * kDeg, 0.6, std::nullopt};
      def.wind_shift_minute = 60;
      break;
    case 3:
      def.terrain = TerrainKind::hills;
      def.hills = {{25.0, 30.0, 30.0, 12.0}, {70.0, 60.0, 25.0, 10.0}, {40.0, 80.0, 35.0, 14.0}};
      def.areas = {kNorthEast, kSouthWest, kSouthEast};
      def.wind = {0.0, 0.6, std::nullopt};
      break;
    case 4:
      def.terrain = TerrainKind::file;
      break;
    default:
      throw ConfigError("case id must be 1, 2, 3 or 4, got " + std::to_string(id));
  }
  return def;
}

ScenarioBundle build_case_bundle(const CaseDefinition& def, std::uint64_t seed) {
  if (def.id < 1 || def.id > 4) throw ConfigError("case id must be 1, 2, 3 or 4, got " + std::to_string(def.id));
  ScenarioBundle bundle;
  if (def.terrain == TerrainKind::file) {
    bundle = load_scenario_dir(def.data_dir);
    if (def.preset) bundle.scenario.spread_preset = *def.preset;
    return bundle;
  }

  Scenario& s = bundle.scenario;
  s.initial_fuel = FuelGrid(def.uniform_fuel);
  s.ignition_cells = ignition_block();
  s.origin = {50, 50};
  s.spread_preset = def.preset.value_or(SpreadPreset::moderate);
  if (def.terrain == TerrainKind::hills) {
    for (int r = 0; r < kGridSize; ++r) {
      for (int c = 0; c < kGridSize; ++c) {
        double z = 0.0;
        for (const auto& h : def.hills) {
          const double d2 = (r - h.row) * (r - h.row) + (c - h.col) * (c - h.col);
          z += h.height_m * std::exp(-d2 / (2.0 * h.sigma_cells * h.sigma_cells));
        }
        s.elevation.at(r, c) = z;
      }
    }
  }
  for (const auto& a : def.areas) {
    for (int r = a.row0; r <= a.row1; ++r) {
      for (int c = a.col0; c <= a.col1; ++c) s.resources.at(r, c) = a.value;
    }
  }
  WindPhase first = def.wind;
  if (def.wind_shift_minute) {
    first.switch_time = *def.wind_shift_minute;
    Rng rng(hash_combine(seed, kCaseSalt));
    const double shift = def.shift_min_deg + (def.shift_max_deg - def.shift_min_deg) * rng.uniform();
    WindPhase second{std::fmod(def.wind.direction + shift * kDeg, 2.0 * std::numbers::pi), def.wind.strength,
                     std::nullopt};
    s.wind = {first, second};
  } else {
    first.switch_time.reset();
    s.wind = {first};
  }
  s.validate();
  return bundle;
}

Scenario build_case(const CaseDefinition& def, std::uint64_t seed) { return build_case_bundle(def, seed).scenario; }

}  // namespace wildfire
