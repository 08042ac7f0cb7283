#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wildfire/errors.hpp"

namespace wildfire {

/// Wildfire grid side length in cells. One cell is a 2 m x 2 m patch.
inline constexpr int kGridSize = 100;
inline constexpr int kCellCount = kGridSize * kGridSize;
inline constexpr double kCellMeters = 2.0;

/// Chebyshev radius of the neighbourhood that drives uncertainty growth.
inline constexpr int kUncertaintyRadius = 5;
inline constexpr int kUncertaintyNeighbourhood =
    (2 * kUncertaintyRadius + 1) * (2 * kUncertaintyRadius + 1) - 1;

constexpr bool in_bounds(int row, int col) {
  return row >= 0 && row < kGridSize && col >= 0 && col < kGridSize;
}

/// Row/column address of a wildfire cell. Rows grow southward, columns grow
/// eastward.
class CellIndex {
 public:
  constexpr CellIndex() = default;
  constexpr CellIndex(int row, int col) : row_(row), col_(col) {
    if (!in_bounds(row, col)) {
      throw ContractViolation("cell (" + std::to_string(row) + "," + std::to_string(col) +
                              ") is outside the wildfire grid");
    }
  }

  static constexpr CellIndex from_flat(int flat) { return {flat / kGridSize, flat % kGridSize}; }

  constexpr int row() const { return row_; }
  constexpr int col() const { return col_; }
  constexpr int flat() const { return row_ * kGridSize + col_; }

  constexpr auto operator<=>(const CellIndex&) const = default;

 private:
  int row_ = 0;
  int col_ = 0;
};

/// Planar position in metres. x grows east, y grows south (same as rows).
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2, Point2) = default;
};

double norm(Point2 p);
double dot(Point2 a, Point2 b);

/// Centre of a cell in metres.
constexpr Point2 cell_center(CellIndex c) {
  return {(c.col() + 0.5) * kCellMeters, (c.row() + 0.5) * kCellMeters};
}

/// Dense kGridSize x kGridSize grid in row-major order.
template <class T>
class Grid {
 public:
  Grid() : data_(kCellCount, T{}) {}
  explicit Grid(T fill) : data_(kCellCount, fill) {}

  T& operator[](CellIndex c) { return data_[c.flat()]; }
  const T& operator[](CellIndex c) const { return data_[c.flat()]; }
  T& at(int row, int col) { return data_[row * kGridSize + col]; }
  const T& at(int row, int col) const { return data_[row * kGridSize + col]; }
  T& flat(int i) { return data_[i]; }
  const T& flat(int i) const { return data_[i]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<T> data_;
};

using BoolGrid = Grid<std::uint8_t>;
using FuelGrid = Grid<int>;
using RealGrid = Grid<double>;

/// Ground-truth fire state advanced by the simulator.
struct WorldState {
  BoolGrid burning;
  FuelGrid fuel;
  int clock = 0;  // minutes since ignition

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

/// Shared belief map and per-cell staleness in [0,1].
struct BeliefState {
  BoolGrid burning;
  RealGrid uncertainty;

  friend bool operator==(const BeliefState&, const BeliefState&) = default;
};

struct Observation {
  CellIndex cell;
  bool burning = false;
};

/// Cells observed in one time step. Adding a cell twice keeps the last value.
class ObservationBatch {
 public:
  void add(CellIndex cell, bool burning);
  std::span<const Observation> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::vector<CellIndex> cells() const;
  /// Appends another batch, keeping last-write-wins semantics.
  void merge(const ObservationBatch& other);

 private:
  std::vector<Observation> entries_;
};

enum class SpreadPreset { slow, moderate, rapid, ultrarapid };

std::string to_string(SpreadPreset preset);
SpreadPreset parse_spread_preset(const std::string& text);

/// One wind regime. direction is the heading the wind blows toward, in radians
/// counter-clockwise from east (north is up). The phase ends at switch_time.
struct WindPhase {
  double direction = 0.0;
  double strength = 0.0;
  std::optional<int> switch_time;

  friend bool operator==(const WindPhase&, const WindPhase&) = default;
};

struct Scenario {
  RealGrid resources;
  RealGrid elevation;  // metres
  std::vector<WindPhase> wind{WindPhase{}};
  std::vector<CellIndex> ignition_cells{CellIndex{kGridSize / 2, kGridSize / 2}};
  CellIndex origin{kGridSize / 2, kGridSize / 2};
  Point2 water_source{-10000.0, kGridSize * kCellMeters / 2.0};
  SpreadPreset spread_preset = SpreadPreset::moderate;
  FuelGrid initial_fuel{10};

  /// Index of the wind phase active at the given minute.
  std::size_t wind_phase_index(int minute) const;
  const WindPhase& wind_at(int minute) const { return wind[wind_phase_index(minute)]; }
  /// Throws ContractViolation if an invariant does not hold.
  void validate() const;
  int max_initial_fuel() const;
  int median_initial_fuel() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// World at t = 0: ignition cells burning, fuel from the scenario.
WorldState initial_world(const Scenario& scenario);

BeliefState update_belief(BeliefState belief, const ObservationBatch& obs);

/// Fraction of believed-burning cells in each cell's Chebyshev neighbourhood
/// (the cell itself excluded), normalised by the full neighbourhood size.
RealGrid uncertainty_growth(const BoolGrid& believed_burning);

BeliefState increment_uncertainty(BeliefState belief, std::span<const CellIndex> observed);

/// Sum over burning cells of (1 + resources).
double instantaneous_destruction(const BoolGrid& burning, const RealGrid& resources);

/// Mean distance in metres from origin to the burning cells; 0 if none burn.
double ring_radius(const BoolGrid& burning, CellIndex origin);

int burning_count(const BoolGrid& burning);
bool touches_boundary(const BoolGrid& burning);

}  // namespace wildfire
