#pragma once

#include <array>
#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wildfire/grid.hpp"
#include "wildfire/propagation.hpp"
#include "wildfire/rng.hpp"

namespace wildfire {

enum class DropType : std::uint8_t { point = 0, line_ns = 1, line_ew = 2, line_ne_sw = 3, line_nw_se = 4 };

inline constexpr std::array<DropType, 5> kDropTypes{DropType::point, DropType::line_ns, DropType::line_ew,
                                                    DropType::line_ne_sw, DropType::line_nw_se};
inline constexpr int kSuppressionActionCount = kCellCount * static_cast<int>(kDropTypes.size());

std::string to_string(DropType drop);
DropType parse_drop_type(const std::string& text);

/// One water drop: centre cell and drop type.
struct SuppressionActionSpec {
  CellIndex center;
  DropType drop = DropType::point;

  /// Position in the full 50,000-action space.
  int index() const { return center.flat() * 5 + static_cast<int>(drop); }
  auto operator<=>(const SuppressionActionSpec&) const = default;
};

struct Offset {
  int drow = 0;
  int dcol = 0;
  auto operator<=>(const Offset&) const = default;
};

struct FootprintTemplate {
  std::vector<Offset> full_offsets;
  std::vector<Offset> partial_offsets;

  void validate() const;
  friend bool operator==(const FootprintTemplate&, const FootprintTemplate&) = default;
};

/// Templates for all five drop types.
class TemplateSet {
 public:
  /// S-70 with a 660 gal short-line bucket: a 4x4 point core and a 2x13
  /// line core, each ringed by one cell of partial suppression.
  static TemplateSet defaults();

  /// Reads sections of the form
  ///   [point]
  ///   full: drow,dcol
  ///   partial: drow,dcol
  /// Every drop type must appear.
  static TemplateSet parse(std::istream& in);
  static TemplateSet load(const std::string& path);
  void write(std::ostream& out) const;

  const FootprintTemplate& operator[](DropType drop) const { return templates_[static_cast<int>(drop)]; }

  friend bool operator==(const TemplateSet&, const TemplateSet&) = default;

 private:
  std::array<FootprintTemplate, 5> templates_;
};

/// Aircraft approach line through the grid.
struct AxisOfAdvance {
  Point2 anchor;     // metres
  Point2 direction;  // unit vector
};

struct SuppressionTiming {
  double d_t = 1.0;  // minutes per surveillance step
  int k = 5;         // surveillance steps per drop cycle
  double d_T() const { return k * d_t; }
};

/// (F_T, P_T) for a drop, clipped to the grid.
SuppressionOutcome footprint(const SuppressionActionSpec& action, const TemplateSet& templates);
SuppressionOutcome footprint(const SuppressionActionSpec& action);

AxisOfAdvance axis_of_advance(const SuppressionActionSpec& action, Point2 water_source);

/// Fill and release manoeuvring per drop cycle, minutes.
inline constexpr double kDropOverheadMinutes = 0.5;

/// Drop cycle length for a bucket aircraft shuttling between the fire and a
/// water source distance_km away. Speeds are in knots. The cycle is paced by
/// the slower leg plus overhead; k never drops below 1.
SuppressionTiming drop_cadence(double distance_km, double loaded_speed_kts, double unloaded_speed_kts,
                               double overhead_min = kDropOverheadMinutes);

struct SuppressionResult {
  BoolGrid burning;
  std::optional<FuelGrid> fuel;
  SuppressionOutcome outcome;
};

/// Clears burning cells in F_T, clears each burning P_T cell with probability
/// 1 - p_partial and removes gamma_F / gamma_P fuel from the footprint.
SuppressionResult apply_suppression(const BoolGrid& grid, const FuelGrid* fuel, const SuppressionActionSpec& action,
                                    const PropagationParams& params, Rng& rng, const TemplateSet& templates);
SuppressionResult apply_suppression(const BoolGrid& grid, const FuelGrid* fuel, const SuppressionActionSpec& action,
                                    const PropagationParams& params, Rng& rng);

/// In-place variant for planner rollouts; partial draws come from
/// counter_uniform(key, cell).
void apply_outcome_in_place(BoolGrid& grid, FuelGrid* fuel, const SuppressionOutcome& outcome,
                            const PropagationParams& params, std::uint64_t key);

}  // namespace wildfire
