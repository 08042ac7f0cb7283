#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "wildfire/drops.hpp"
#include "wildfire/grid.hpp"
#include "wildfire/rng.hpp"

namespace wildfire {

/// Airspace above the wildfire grid: 10 x 10 columns of 20 m cells, 7 levels.
inline constexpr int kAirspaceSize = 10;
inline constexpr int kAirspaceMinZ = 1;
inline constexpr int kAirspaceMaxZ = 7;
inline constexpr double kAirspaceCellMeters = 20.0;
inline constexpr int kWildfireCellsPerAirspaceCell = kGridSize / kAirspaceSize;

struct DronePosition {
  int x = 0;  // east
  int y = 0;  // south
  int z = kAirspaceMinZ;

  bool in_bounds() const {
    return x >= 0 && x < kAirspaceSize && y >= 0 && y < kAirspaceSize && z >= kAirspaceMinZ && z <= kAirspaceMaxZ;
  }
  auto operator<=>(const DronePosition&) const = default;
};

/// Horizontal position in metres, same frame as cell_center.
Point2 horizontal_position(const DronePosition& d);
/// Distance in metres between two drones in 3-D.
double drone_distance(const DronePosition& a, const DronePosition& b);

struct SurveillanceState {
  DronePosition drone1;
  DronePosition drone2;

  bool valid() const { return drone1.in_bounds() && drone2.in_bounds() && drone1 != drone2; }
  auto operator<=>(const SurveillanceState&) const = default;
};

enum class Move : std::uint8_t { up = 0, down, left, right, ascend, descend, hover };

inline constexpr std::array<Move, 7> kMoves{Move::up,     Move::down,    Move::left, Move::right,
                                            Move::ascend, Move::descend, Move::hover};
inline constexpr int kJointActionCount = static_cast<int>(kMoves.size() * kMoves.size());

std::string to_string(Move m);

/// Position after one move; may leave the airspace.
DronePosition displaced(const DronePosition& d, Move m);

struct SurveillanceAction {
  Move move1 = Move::hover;
  Move move2 = Move::hover;

  int index() const { return static_cast<int>(move1) * 7 + static_cast<int>(move2); }
  static SurveillanceAction from_index(int index);
  auto operator<=>(const SurveillanceAction&) const = default;
};

/// Joint actions that keep both drones inside the airspace and out of a
/// shared cell, in index order.
std::vector<SurveillanceAction> legal_actions(const SurveillanceState& s);
bool is_legal(const SurveillanceState& s, const SurveillanceAction& e);

SurveillanceState apply_action(const SurveillanceState& s, const SurveillanceAction& e);

struct PenaltyParams {
  double tau1 = 1.0;    // weight on observed uncertainty
  double p_u = 50.0;    // drone-drone separation penalty (tau2)
  double p_m = 500.0;   // drone-AOA separation penalty (tau3)
  double tau4 = 0.01;   // per-metre distance-to-origin weight
  double d_u = 40.0;    // metres
  double d_m = 100.0;   // metres

  void validate() const;
  friend bool operator==(const PenaltyParams&, const PenaltyParams&) = default;
};

struct RangingParams {
  int side_per_level = 10;  // footprint side in wildfire cells per altitude level
  int cap = 100;            // cells observed per drone per step

  void validate() const;
  friend bool operator==(const RangingParams&, const RangingParams&) = default;
};

/// Inclusive-exclusive wildfire-cell rectangle under a drone, clipped.
struct CellRect {
  int row0 = 0, row1 = 0, col0 = 0, col1 = 0;
  int area() const { return (row1 - row0) * (col1 - col0); }
};

CellRect ranging_footprint(const DronePosition& d, const RangingParams& params);

/// Flat indices of the cells both drones observe, without duplicates.
/// Each drone observes its whole footprint when it holds at most cap cells,
/// otherwise cap cells drawn uniformly without replacement.
void ranging_cells(const SurveillanceState& s, Rng& rng, const RangingParams& params, std::vector<int>& out);

/// Observations of `truth` from state s.
ObservationBatch ranging(const SurveillanceState& s, const BoolGrid& truth, Rng& rng,
                         const RangingParams& params = {});
ObservationBatch ranging(const SurveillanceState& s, const WorldState& world, Rng& rng,
                         const RangingParams& params = {});

/// Distance in metres from p to the axis of advance clipped to the wildfire
/// grid square.
double distance_to_aoa(Point2 p, const AxisOfAdvance& aoa);

struct PenaltyBreakdown {
  double p_u = 0.0;
  double p_m = 0.0;
  double p_i = 0.0;
  double total() const { return p_u + p_m + p_i; }
};

PenaltyBreakdown surveillance_penalties(const SurveillanceState& s, const AxisOfAdvance* aoa, CellIndex origin,
                                        const PenaltyParams& params);

/// tau1 times the summed uncertainty of the observed cells, minus penalties.
double surveillance_reward(const SurveillanceState& s_next, const RealGrid& uncertainty,
                           std::span<const CellIndex> obs_cells, const AxisOfAdvance* aoa, CellIndex origin,
                           const PenaltyParams& params);

}  // namespace wildfire
