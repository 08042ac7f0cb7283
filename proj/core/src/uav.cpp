#include "wildfire/uav.hpp"

#include <cmath>
#include <limits>

namespace wildfire {

namespace {

// Generation-stamped membership over flat cell indices; two generations are
// consumed per ranging call and the maximum value is never a live stamp.
struct StampSet {
  std::vector<std::uint32_t> stamp = std::vector<std::uint32_t>(kCellCount, 0);
  std::uint32_t generation = 0;

  std::uint32_t begin_call() {
    if (generation > std::numeric_limits<std::uint32_t>::max() - 8) {
      std::fill(stamp.begin(), stamp.end(), 0);
      generation = 0;
    }
    generation += 2;
    return generation - 1;
  }
};

thread_local StampSet tl_stamps;

int rect_cell(const CellRect& r, int local) {
  const int width = r.col1 - r.col0;
  return (r.row0 + local / width) * kGridSize + r.col0 + local % width;
}

// Emits the cells of one drone. A cell whose stamp is `mine` is already in
// this drone's set; `other` marks cells emitted by the previous drone.
void observe_rect(const CellRect& rect, int cap, std::uint32_t mine, std::uint32_t other, Rng& rng,
                  std::vector<std::uint32_t>& stamp, std::vector<int>& out) {
  const int n = rect.area();
  if (n <= 0) return;
  auto take = [&](int flat) {
    const bool seen_by_other = stamp[flat] == other;
    stamp[flat] = mine;
    if (!seen_by_other) out.push_back(flat);
  };
  if (n <= cap) {
    for (int i = 0; i < n; ++i) take(rect_cell(rect, i));
    return;
  }
  // Floyd's sampling: cap distinct local indices out of n.
  for (int j = n - cap; j < n; ++j) {
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    const int flat_t = rect_cell(rect, t);
    take(stamp[flat_t] == mine ? rect_cell(rect, j) : flat_t);
  }
}

}  // namespace

Point2 horizontal_position(const DronePosition& d) {
  return {(d.x + 0.5) * kAirspaceCellMeters, (d.y + 0.5) * kAirspaceCellMeters};
}

double drone_distance(const DronePosition& a, const DronePosition& b) {
  const double dx = (a.x - b.x) * kAirspaceCellMeters;
  const double dy = (a.y - b.y) * kAirspaceCellMeters;
  const double dz = (a.z - b.z) * kAirspaceCellMeters;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::string to_string(Move m) {
  switch (m) {
    case Move::up: return "up";
    case Move::down: return "down";
    case Move::left: return "left";
    case Move::right: return "right";
    case Move::ascend: return "ascend";
    case Move::descend: return "descend";
    case Move::hover: return "hover";
  }
  return "hover";
}

DronePosition displaced(const DronePosition& d, Move m) {
  DronePosition out = d;
  switch (m) {
    case Move::up: --out.y; break;
    case Move::down: ++out.y; break;
    case Move::left: --out.x; break;
    case Move::right: ++out.x; break;
    case Move::ascend: ++out.z; break;
    case Move::descend: --out.z; break;
    case Move::hover: break;
  }
  return out;
}

SurveillanceAction SurveillanceAction::from_index(int index) {
  require(index >= 0 && index < kJointActionCount, "surveillance action index out of range");
  return {kMoves[index / 7], kMoves[index % 7]};
}

bool is_legal(const SurveillanceState& s, const SurveillanceAction& e) {
  const DronePosition a = displaced(s.drone1, e.move1);
  const DronePosition b = displaced(s.drone2, e.move2);
  return a.in_bounds() && b.in_bounds() && a != b;
}

std::vector<SurveillanceAction> legal_actions(const SurveillanceState& s) {
  std::vector<SurveillanceAction> out;
  out.reserve(kJointActionCount);
  for (auto m1 : kMoves) {
    if (!displaced(s.drone1, m1).in_bounds()) continue;
    for (auto m2 : kMoves) {
      const SurveillanceAction e{m1, m2};
      if (is_legal(s, e)) out.push_back(e);
    }
  }
  return out;
}

SurveillanceState apply_action(const SurveillanceState& s, const SurveillanceAction& e) {
  if (!is_legal(s, e)) {
    throw ContractViolation("illegal surveillance action " + to_string(e.move1) + "/" + to_string(e.move2));
  }
  return {displaced(s.drone1, e.move1), displaced(s.drone2, e.move2)};
}

void PenaltyParams::validate() const {
  require(d_m > d_u && d_u >= 0.0, "need d_m > d_u >= 0");
  require(p_m > p_u && p_u >= 0.0, "need p_m > p_u >= 0");
  require(tau1 >= 0.0 && tau4 >= 0.0, "tau1 and tau4 must be non-negative");
}

void RangingParams::validate() const {
  require(side_per_level >= 1, "ranging side_per_level must be at least 1");
  require(cap >= 1, "ranging cap must be at least 1");
}

CellRect ranging_footprint(const DronePosition& d, const RangingParams& params) {
  const int side = params.side_per_level * d.z;
  // Twice the centre coordinate keeps odd sides exact.
  const int row2 = (2 * d.y + 1) * kWildfireCellsPerAirspaceCell;
  const int col2 = (2 * d.x + 1) * kWildfireCellsPerAirspaceCell;
  CellRect r;
  r.row0 = std::clamp((row2 - side) / 2, 0, kGridSize);
  r.row1 = std::clamp((row2 + side) / 2, 0, kGridSize);
  r.col0 = std::clamp((col2 - side) / 2, 0, kGridSize);
  r.col1 = std::clamp((col2 + side) / 2, 0, kGridSize);
  return r;
}

void ranging_cells(const SurveillanceState& s, Rng& rng, const RangingParams& params, std::vector<int>& out) {
  out.clear();
  const std::uint32_t first = tl_stamps.begin_call();
  const std::uint32_t second = first + 1;
  constexpr std::uint32_t kNoDrone = std::numeric_limits<std::uint32_t>::max();
  observe_rect(ranging_footprint(s.drone1, params), params.cap, first, kNoDrone, rng, tl_stamps.stamp, out);
  observe_rect(ranging_footprint(s.drone2, params), params.cap, second, first, rng, tl_stamps.stamp, out);
}

ObservationBatch ranging(const SurveillanceState& s, const BoolGrid& truth, Rng& rng, const RangingParams& params) {
  std::vector<int> cells;
  ranging_cells(s, rng, params, cells);
  ObservationBatch batch;
  for (int flat : cells) batch.add(CellIndex::from_flat(flat), truth.flat(flat) != 0);
  return batch;
}

ObservationBatch ranging(const SurveillanceState& s, const WorldState& world, Rng& rng, const RangingParams& params) {
  return ranging(s, world.burning, rng, params);
}

double distance_to_aoa(Point2 p, const AxisOfAdvance& aoa) {
  // Clip the infinite line to the grid square by slab intersection.
  const double extent = kGridSize * kCellMeters;
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  const double origin[2] = {aoa.anchor.x, aoa.anchor.y};
  const double dir[2] = {aoa.direction.x, aoa.direction.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (std::abs(dir[axis]) < 1e-12) continue;
    double a = (0.0 - origin[axis]) / dir[axis];
    double b = (extent - origin[axis]) / dir[axis];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  if (!(t0 <= t1)) t0 = t1 = 0.0;
  const double t = std::clamp(dot(p - aoa.anchor, aoa.direction), t0, t1);
  return norm(p - (aoa.anchor + t * aoa.direction));
}

PenaltyBreakdown surveillance_penalties(const SurveillanceState& s, const AxisOfAdvance* aoa, CellIndex origin,
                                        const PenaltyParams& params) {
  PenaltyBreakdown out;
  if (drone_distance(s.drone1, s.drone2) <= params.d_u) out.p_u = params.p_u;
  const Point2 h1 = horizontal_position(s.drone1);
  const Point2 h2 = horizontal_position(s.drone2);
  if (aoa != nullptr && (distance_to_aoa(h1, *aoa) <= params.d_m || distance_to_aoa(h2, *aoa) <= params.d_m)) {
    out.p_m = params.p_m;
  }
  const Point2 o = cell_center(origin);
  out.p_i = params.tau4 * (norm(h1 - o) + norm(h2 - o));
  return out;
}

double surveillance_reward(const SurveillanceState& s_next, const RealGrid& uncertainty,
                           std::span<const CellIndex> obs_cells, const AxisOfAdvance* aoa, CellIndex origin,
                           const PenaltyParams& params) {
  double observed = 0.0;
  for (auto c : obs_cells) observed += uncertainty[c];
  return params.tau1 * observed - surveillance_penalties(s_next, aoa, origin, params).total();
}

}  // namespace wildfire
