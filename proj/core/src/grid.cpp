#include "wildfire/grid.hpp"

#include <cmath>
#include <unordered_map>

namespace wildfire {

double norm(Point2 p) { return std::hypot(p.x, p.y); }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

void ObservationBatch::add(CellIndex cell, bool burning) {
  for (auto& entry : entries_) {
    if (entry.cell == cell) {
      entry.burning = burning;
      return;
    }
  }
  entries_.push_back({cell, burning});
}

void ObservationBatch::merge(const ObservationBatch& other) {
  if (entries_.empty()) {
    entries_ = other.entries_;
    return;
  }
  std::unordered_map<int, std::size_t> position;
  position.reserve(entries_.size() + other.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) position.emplace(entries_[i].cell.flat(), i);
  for (const auto& entry : other.entries()) {
    auto [it, inserted] = position.emplace(entry.cell.flat(), entries_.size());
    if (inserted) {
      entries_.push_back(entry);
    } else {
      entries_[it->second].burning = entry.burning;
    }
  }
}

std::vector<CellIndex> ObservationBatch::cells() const {
  std::vector<CellIndex> out;
  out.reserve(entries_.size());
  for (const auto& entry : entries_) out.push_back(entry.cell);
  return out;
}

std::string to_string(SpreadPreset preset) {
  switch (preset) {
    case SpreadPreset::slow: return "slow";
    case SpreadPreset::moderate: return "moderate";
    case SpreadPreset::rapid: return "rapid";
    case SpreadPreset::ultrarapid: return "ultrarapid";
  }
  return "moderate";
}

SpreadPreset parse_spread_preset(const std::string& text) {
  if (text == "slow") return SpreadPreset::slow;
  if (text == "moderate") return SpreadPreset::moderate;
  if (text == "rapid") return SpreadPreset::rapid;
  if (text == "ultrarapid") return SpreadPreset::ultrarapid;
  throw ConfigError("unknown spread preset '" + text + "'");
}

std::size_t Scenario::wind_phase_index(int minute) const {
  std::size_t i = 0;
  while (i + 1 < wind.size() && wind[i].switch_time && minute >= *wind[i].switch_time) ++i;
  return i;
}

void Scenario::validate() const {
  require(!ignition_cells.empty(), "scenario needs at least one ignition cell");
  require(!wind.empty(), "scenario needs at least one wind phase");
  for (const auto& phase : wind) require(phase.strength >= 0.0, "wind strength must be non-negative");
  for (double r : resources.values()) require(r >= 0.0, "resources must be non-negative");
  for (int f : initial_fuel.values()) require(f >= 0, "initial fuel must be non-negative");
}

int Scenario::max_initial_fuel() const {
  const auto values = initial_fuel.values();
  return *std::max_element(values.begin(), values.end());
}

int Scenario::median_initial_fuel() const {
  std::vector<int> values(initial_fuel.values().begin(), initial_fuel.values().end());
  auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

WorldState initial_world(const Scenario& scenario) {
  WorldState world;
  world.fuel = scenario.initial_fuel;
  for (const auto& cell : scenario.ignition_cells) {
    if (world.fuel[cell] > 0) world.burning[cell] = 1;
  }
  return world;
}

BeliefState update_belief(BeliefState belief, const ObservationBatch& obs) {
  for (const auto& entry : obs.entries()) {
    belief.burning[entry.cell] = entry.burning ? 1 : 0;
    belief.uncertainty[entry.cell] = 0.0;
  }
  return belief;
}

RealGrid uncertainty_growth(const BoolGrid& believed_burning) {
  // Summed-area table with a one-cell zero border.
  constexpr int n = kGridSize + 1;
  std::vector<int> sat(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < kGridSize; ++r) {
    int row_sum = 0;
    for (int c = 0; c < kGridSize; ++c) {
      row_sum += believed_burning.at(r, c) ? 1 : 0;
      sat[(r + 1) * n + (c + 1)] = sat[r * n + (c + 1)] + row_sum;
    }
  }
  RealGrid growth;
  for (int r = 0; r < kGridSize; ++r) {
    const int r0 = std::max(0, r - kUncertaintyRadius);
    const int r1 = std::min(kGridSize - 1, r + kUncertaintyRadius) + 1;
    for (int c = 0; c < kGridSize; ++c) {
      const int c0 = std::max(0, c - kUncertaintyRadius);
      const int c1 = std::min(kGridSize - 1, c + kUncertaintyRadius) + 1;
      int count = sat[r1 * n + c1] - sat[r0 * n + c1] - sat[r1 * n + c0] + sat[r0 * n + c0];
      count -= believed_burning.at(r, c) ? 1 : 0;
      growth.at(r, c) = static_cast<double>(count) / kUncertaintyNeighbourhood;
    }
  }
  return growth;
}

BeliefState increment_uncertainty(BeliefState belief, std::span<const CellIndex> observed) {
  const RealGrid growth = uncertainty_growth(belief.burning);
  for (int i = 0; i < kCellCount; ++i) {
    belief.uncertainty.flat(i) = std::min(1.0, belief.uncertainty.flat(i) + growth.flat(i));
  }
  for (const auto& cell : observed) belief.uncertainty[cell] = 0.0;
  return belief;
}

double instantaneous_destruction(const BoolGrid& burning, const RealGrid& resources) {
  double total = 0.0;
  for (int i = 0; i < kCellCount; ++i) {
    if (burning.flat(i)) total += 1.0 + resources.flat(i);
  }
  return total;
}

double ring_radius(const BoolGrid& burning, CellIndex origin) {
  double total = 0.0;
  int count = 0;
  for (int r = 0; r < kGridSize; ++r) {
    for (int c = 0; c < kGridSize; ++c) {
      if (!burning.at(r, c)) continue;
      total += std::hypot(r - origin.row(), c - origin.col());
      ++count;
    }
  }
  return count == 0 ? 0.0 : kCellMeters * total / count;
}

int burning_count(const BoolGrid& burning) {
  int count = 0;
  for (auto b : burning.values()) count += b ? 1 : 0;
  return count;
}

bool touches_boundary(const BoolGrid& burning) {
  for (int i = 0; i < kGridSize; ++i) {
    if (burning.at(0, i) || burning.at(kGridSize - 1, i) || burning.at(i, 0) ||
        burning.at(i, kGridSize - 1)) {
      return true;
    }
  }
  return false;
}

}  // namespace wildfire
