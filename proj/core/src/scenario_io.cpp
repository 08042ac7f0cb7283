#include "wildfire/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

namespace wildfire {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw FileFormatError(where + ": '" + text + "' is not a number");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& where) {
  const double v = parse_number(text, where);
  if (v != std::floor(v)) throw FileFormatError(where + ": '" + text + "' is not an integer");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

CellIndex parse_cell(const std::string& text, const std::string& where) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw FileFormatError(where + ": expected 'row,col'");
  const int r = parse_int(parts[0], where);
  const int c = parse_int(parts[1], where);
  if (!in_bounds(r, c)) throw FileFormatError(where + ": cell " + text + " is outside the grid");
  return {r, c};
}

const std::set<std::string>& override_keys() {
  static const std::set<std::string> keys{
      "alpha", "p0",   "p_partial", "gamma_full", "gamma_partial", "wind_bias", "slope_bias",
      "tau1",  "p_u",  "p_m",       "tau4",       "d_u",           "d_m",       "ranging_side_per_level",
      "ranging_cap"};
  return keys;
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

RealGrid load_layer(const std::filesystem::path& dir, const std::string& name) {
  const auto path = dir / name;
  std::ifstream in(path);
  if (!in) throw FileFormatError("scenario layer " + name + " is missing from " + dir.string());
  return read_grid_csv(in, name);
}

}  // namespace

PropagationParams ScenarioBundle::propagation() const {
  PropagationParams p = PropagationParams::defaults_for(scenario);
  auto get = [&](const char* key, auto& field) {
    if (auto it = overrides.find(key); it != overrides.end()) field = static_cast<std::decay_t<decltype(field)>>(it->second);
  };
  get("alpha", p.alpha);
  get("p0", p.p0);
  get("p_partial", p.p_partial);
  get("gamma_full", p.gamma_full);
  get("gamma_partial", p.gamma_partial);
  get("wind_bias", p.wind_bias);
  get("slope_bias", p.slope_bias);
  return p;
}

PenaltyParams ScenarioBundle::penalties() const {
  PenaltyParams p;
  auto get = [&](const char* key, double& field) {
    if (auto it = overrides.find(key); it != overrides.end()) field = it->second;
  };
  get("tau1", p.tau1);
  get("p_u", p.p_u);
  get("p_m", p.p_m);
  get("tau4", p.tau4);
  get("d_u", p.d_u);
  get("d_m", p.d_m);
  return p;
}

RangingParams ScenarioBundle::ranging() const {
  RangingParams r;
  if (auto it = overrides.find("ranging_side_per_level"); it != overrides.end()) {
    r.side_per_level = static_cast<int>(it->second);
  }
  if (auto it = overrides.find("ranging_cap"); it != overrides.end()) r.cap = static_cast<int>(it->second);
  return r;
}

RealGrid read_grid_csv(std::istream& in, const std::string& layer) {
  RealGrid grid;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (row >= kGridSize) throw FileFormatError(layer + ": more than " + std::to_string(kGridSize) + " rows");
    const auto cells = split(line, ',');
    if (static_cast<int>(cells.size()) != kGridSize) {
      throw FileFormatError(layer + ": row " + std::to_string(row + 1) + " has " + std::to_string(cells.size()) +
                            " values, expected " + std::to_string(kGridSize));
    }
    for (int c = 0; c < kGridSize; ++c) {
      grid.at(row, c) = parse_number(cells[c], layer + " row " + std::to_string(row + 1));
    }
    ++row;
  }
  if (row != kGridSize) {
    throw FileFormatError(layer + ": " + std::to_string(row) + " rows, expected " + std::to_string(kGridSize));
  }
  return grid;
}

void write_grid_csv(std::ostream& out, const RealGrid& grid, int precision) {
  out << std::setprecision(precision);
  for (int r = 0; r < kGridSize; ++r) {
    for (int c = 0; c < kGridSize; ++c) {
      if (c > 0) out << ',';
      out << grid.at(r, c);
    }
    out << '\n';
  }
}

void parse_scenario_keys(std::istream& in, ScenarioBundle& bundle) {
  Scenario& s = bundle.scenario;
  std::map<int, WindPhase> phases;
  std::string line;
  int line_no = 0;
  bool saw_ignition = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "scenario.txt line " + std::to_string(line_no);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FileFormatError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "spread_preset") {
      try {
        s.spread_preset = parse_spread_preset(value);
      } catch (const ConfigError& e) {
        throw FileFormatError(where + ": " + e.what());
      }
    } else if (key == "origin") {
      s.origin = parse_cell(value, where);
    } else if (key == "ignition") {
      s.ignition_cells.clear();
      for (const auto& cell : split(value, ';')) {
        if (!cell.empty()) s.ignition_cells.push_back(parse_cell(cell, where));
      }
      saw_ignition = true;
    } else if (key == "water_source") {
      const auto parts = split(value, ',');
      if (parts.size() != 2) throw FileFormatError(where + ": expected 'x,y' in metres");
      s.water_source = {parse_number(parts[0], where), parse_number(parts[1], where)};
    } else if (key.rfind("wind.", 0) == 0) {
      const auto parts = split(key, '.');
      if (parts.size() != 3) throw FileFormatError(where + ": expected wind.<phase>.<field>");
      const int phase = parse_int(parts[1], where);
      if (phase < 0) throw FileFormatError(where + ": negative wind phase");
      WindPhase& w = phases[phase];
      if (parts[2] == "direction_deg") {
        w.direction = parse_number(value, where) * std::numbers::pi / 180.0;
      } else if (parts[2] == "strength") {
        w.strength = parse_number(value, where);
      } else if (parts[2] == "switch_time") {
        if (value != "none") w.switch_time = parse_int(value, where);
      } else {
        throw FileFormatError(where + ": unknown wind field '" + parts[2] + "'");
      }
    } else if (override_keys().contains(key)) {
      bundle.overrides[key] = parse_number(value, where);
    } else {
      throw FileFormatError(where + ": unknown key '" + key + "'");
    }
  }
  if (saw_ignition && s.ignition_cells.empty()) throw FileFormatError("scenario.txt: ignition list is empty");
  if (!phases.empty()) {
    s.wind.clear();
    int expected = 0;
    for (const auto& [index, phase] : phases) {
      if (index != expected++) throw FileFormatError("scenario.txt: wind phases must be numbered 0,1,2,...");
      s.wind.push_back(phase);
    }
  }
}

void write_scenario_keys(std::ostream& out, const ScenarioBundle& bundle) {
  const Scenario& s = bundle.scenario;
  out << "spread_preset = " << to_string(s.spread_preset) << '\n';
  out << "origin = " << s.origin.row() << ',' << s.origin.col() << '\n';
  out << "ignition = ";
  for (std::size_t i = 0; i < s.ignition_cells.size(); ++i) {
    if (i > 0) out << "; ";
    out << s.ignition_cells[i].row() << ',' << s.ignition_cells[i].col();
  }
  out << '\n';
  out << "water_source = " << format_number(s.water_source.x) << ',' << format_number(s.water_source.y) << '\n';
  for (std::size_t i = 0; i < s.wind.size(); ++i) {
    out << "wind." << i << ".direction_deg = " << format_number(s.wind[i].direction * 180.0 / std::numbers::pi) << '\n';
    out << "wind." << i << ".strength = " << format_number(s.wind[i].strength) << '\n';
    out << "wind." << i << ".switch_time = "
        << (s.wind[i].switch_time ? std::to_string(*s.wind[i].switch_time) : std::string("none")) << '\n';
  }
  for (const auto& [key, value] : bundle.overrides) out << key << " = " << format_number(value) << '\n';
}

ScenarioBundle load_scenario_dir(const std::filesystem::path& dir) {
  ScenarioBundle bundle;
  Scenario& s = bundle.scenario;
  const RealGrid fuel = load_layer(dir, "fuel.csv");
  for (int i = 0; i < kCellCount; ++i) {
    const double f = fuel.flat(i);
    if (f < 0.0 || f != std::floor(f)) {
      throw FileFormatError("fuel.csv: cell " + std::to_string(i) + " is not a non-negative integer");
    }
    s.initial_fuel.flat(i) = static_cast<int>(f);
  }
  s.elevation = load_layer(dir, "elevation.csv");
  s.resources = load_layer(dir, "resources.csv");
  std::ifstream keys(dir / "scenario.txt");
  if (!keys) throw FileFormatError("scenario layer scenario.txt is missing from " + dir.string());
  parse_scenario_keys(keys, bundle);
  try {
    s.validate();
  } catch (const ContractViolation& e) {
    throw FileFormatError(std::string("scenario: ") + e.what());
  }
  return bundle;
}

void write_scenario_dir(const ScenarioBundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    return out;
  };
  RealGrid fuel;
  for (int i = 0; i < kCellCount; ++i) fuel.flat(i) = bundle.scenario.initial_fuel.flat(i);
  {
    auto out = open("fuel.csv");
    write_grid_csv(out, fuel);
  }
  {
    auto out = open("elevation.csv");
    write_grid_csv(out, bundle.scenario.elevation, 10);
  }
  {
    auto out = open("resources.csv");
    write_grid_csv(out, bundle.scenario.resources, 10);
  }
  auto out = open("scenario.txt");
  write_scenario_keys(out, bundle);
}

}  // namespace wildfire
