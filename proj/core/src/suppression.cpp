#include "wildfire/suppression.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace wildfire {

namespace {

// Salt separating partial-suppression draws from propagation draws.
constexpr std::uint64_t kDropSalt = 0x6a09e667f3bcc909ULL;

const TemplateSet& default_templates() {
  static const TemplateSet set = TemplateSet::defaults();
  return set;
}

double cell_distance(CellIndex a, int row, int col) { return std::hypot(row - a.row(), col - a.col()); }

// Burning cells sorted farthest-first from origin, ties to the lower index.
std::vector<CellIndex> by_distance_desc(const BoolGrid& burning, CellIndex origin) {
  std::vector<std::pair<double, int>> keyed;
  for (int i = 0; i < kCellCount; ++i) {
    if (!burning.flat(i)) continue;
    const CellIndex c = CellIndex::from_flat(i);
    keyed.emplace_back(cell_distance(origin, c.row(), c.col()), i);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<CellIndex> out;
  out.reserve(keyed.size());
  for (const auto& [d, i] : keyed) out.push_back(CellIndex::from_flat(i));
  return out;
}

std::size_t take_count(std::size_t n, double fraction) {
  if (n == 0) return 0;
  const double raw = static_cast<double>(n) * fraction;
  const auto m = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(m, 1, n);
}

bool within_arc(double bearing, double center) {
  constexpr double kHalfArc = std::numbers::pi / 6.0;
  return std::abs(std::remainder(bearing - center, 2.0 * std::numbers::pi)) <= kHalfArc + 1e-12;
}

std::vector<SuppressionActionSpec> expand_drops(const std::vector<CellIndex>& centers) {
  std::vector<SuppressionActionSpec> out;
  out.reserve(centers.size() * kDropTypes.size());
  for (auto c : centers) {
    for (auto d : kDropTypes) out.push_back({c, d});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index() < b.index(); });
  return out;
}

std::pair<double, double> burning_centroid(const BoolGrid& burning, CellIndex fallback) {
  double r = 0.0, c = 0.0;
  int n = 0;
  for (int i = 0; i < kCellCount; ++i) {
    if (!burning.flat(i)) continue;
    r += i / kGridSize;
    c += i % kGridSize;
    ++n;
  }
  if (n == 0) return {fallback.row(), fallback.col()};
  return {r / n, c / n};
}

CellIndex clamped_cell(int row, int col) {
  return {std::clamp(row, 0, kGridSize - 1), std::clamp(col, 0, kGridSize - 1)};
}

}  // namespace

std::string to_string(SuppressionRewardKind kind) {
  switch (kind) {
    case SuppressionRewardKind::localized: return "localized";
    case SuppressionRewardKind::global: return "global";
    case SuppressionRewardKind::immediate: return "immediate";
  }
  return "localized";
}

SuppressionRewardKind parse_reward_kind(const std::string& text) {
  if (text == "localized") return SuppressionRewardKind::localized;
  if (text == "global") return SuppressionRewardKind::global;
  if (text == "immediate") return SuppressionRewardKind::immediate;
  throw ConfigError("unknown suppression reward '" + text + "'");
}

void SuppressPlannerConfig::validate() const {
  if (asr_method < 1 || asr_method > 3) throw ConfigError("ASR method must be 1, 2 or 3");
  if (!(quantile > 0.0 && quantile < 100.0)) throw ConfigError("quantile must lie in (0,100)");
  if (rollout < 1) throw ConfigError("rollout depth must be at least 1");
  try {
    mcts.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
}

double LocalWindow::destruction(const BoolGrid& burning, const RealGrid& resources) const {
  const int r0 = std::max(0, center.row() - half_width);
  const int r1 = std::min(kGridSize - 1, center.row() + half_width);
  const int c0 = std::max(0, center.col() - half_width);
  const int c1 = std::min(kGridSize - 1, center.col() + half_width);
  double total = 0.0;
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      if (burning.at(r, c)) total += 1.0 + resources.at(r, c);
    }
  }
  return total;
}

std::optional<std::pair<double, double>> fire_head(const BoolGrid& burning, CellIndex origin) {
  const std::vector<CellIndex> ranked = by_distance_desc(burning, origin);
  if (ranked.empty()) return std::nullopt;
  const std::size_t m = take_count(ranked.size(), 0.1);
  double r = 0.0, c = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    r += ranked[i].row();
    c += ranked[i].col();
  }
  return std::make_pair(r / static_cast<double>(m), c / static_cast<double>(m));
}

std::vector<CellIndex> asr_centers(const BoolGrid& belief, int method, double quantile, const Scenario& scenario) {
  require(method >= 1 && method <= 3, "ASR method must be 1, 2 or 3");
  require(quantile > 0.0 && quantile < 100.0, "quantile must lie in (0,100)");
  std::vector<CellIndex> out;
  if (method == 1) {
    for (int i = 0; i < kCellCount; ++i) {
      if (belief.flat(i)) out.push_back(CellIndex::from_flat(i));
    }
    return out;
  }
  const CellIndex origin = scenario.origin;
  std::vector<CellIndex> ranked = by_distance_desc(belief, origin);
  ranked.resize(take_count(ranked.size(), (100.0 - quantile) / 100.0));

  if (method == 3) {
    std::vector<double> arcs;
    const auto values = scenario.resources.values();
    const double max_r = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    if (max_r > 0.0) {
      double r = 0.0, c = 0.0;
      int n = 0;
      for (int i = 0; i < kCellCount; ++i) {
        if (scenario.resources.flat(i) != max_r) continue;
        r += i / kGridSize;
        c += i % kGridSize;
        ++n;
      }
      r /= n;
      c /= n;
      if (r != origin.row() || c != origin.col()) arcs.push_back(std::atan2(r - origin.row(), c - origin.col()));
    }
    if (auto head = fire_head(belief, origin)) {
      const auto [r, c] = *head;
      if (r != origin.row() || c != origin.col()) arcs.push_back(std::atan2(r - origin.row(), c - origin.col()));
    }
    std::erase_if(ranked, [&](CellIndex cell) {
      if (cell == origin) return false;
      const double bearing = std::atan2(cell.row() - origin.row(), cell.col() - origin.col());
      return std::none_of(arcs.begin(), arcs.end(), [&](double a) { return within_arc(bearing, a); });
    });
  }
  std::sort(ranked.begin(), ranked.end());
  return ranked;
}

std::vector<SuppressionActionSpec> asr(const BoolGrid& belief, int method, double quantile, const Scenario& scenario) {
  for (int m = method; m >= 1; --m) {
    std::vector<CellIndex> centers = asr_centers(belief, m, quantile, scenario);
    if (!centers.empty()) return expand_drops(centers);
  }
  return {};
}

double localized_reward(const BoolGrid& belief, const FuelGrid& fuel, const SuppressionActionSpec& a,
                        const Scenario& scenario, const PropagationParams& params, int rollout, std::uint64_t key,
                        const TemplateSet& templates, int minute) {
  require(rollout >= 0, "rollout depth must be non-negative");
  const InternalModel internal(scenario, params, minute);
  BoolGrid reference = belief;
  FuelGrid reference_fuel = fuel;
  internal.advance(reference, reference_fuel, rollout, key);
  BoolGrid suppressed = belief;
  FuelGrid suppressed_fuel = fuel;
  apply_outcome_in_place(suppressed, &suppressed_fuel, footprint(a, templates), params, hash_combine(key, kDropSalt));
  internal.advance(suppressed, suppressed_fuel, rollout, key);
  const LocalWindow window{a.center, rollout};
  return window.destruction(reference, scenario.resources) - window.destruction(suppressed, scenario.resources);
}

double localized_reward(const BoolGrid& belief, const SuppressionActionSpec& a, const Scenario& scenario,
                        const PropagationParams& params, int rollout, Rng& rng) {
  return localized_reward(belief, FuelGrid(scenario.median_initial_fuel()), a, scenario, params, rollout, rng.next(),
                          default_templates());
}

double global_penalty(const BoolGrid& belief, const FuelGrid& fuel, const DropChoice& a, const Scenario& scenario,
                      const PropagationParams& params, int rollout, std::uint64_t key, const TemplateSet& templates,
                      int minute) {
  require(rollout >= 0, "rollout depth must be non-negative");
  const InternalModel internal(scenario, params, minute);
  BoolGrid burning = belief;
  FuelGrid f = fuel;
  if (a) apply_outcome_in_place(burning, &f, footprint(*a, templates), params, hash_combine(key, kDropSalt));
  internal.advance(burning, f, rollout, key);
  return instantaneous_destruction(burning, scenario.resources);
}

double global_penalty(const BoolGrid& belief, const DropChoice& a, const Scenario& scenario,
                      const PropagationParams& params, int rollout, Rng& rng) {
  return global_penalty(belief, FuelGrid(scenario.median_initial_fuel()), a, scenario, params, rollout, rng.next(),
                        default_templates());
}

double expected_cells_cleared(const BoolGrid& belief, const SuppressionActionSpec& a, const PropagationParams& params,
                              const TemplateSet& templates) {
  const SuppressionOutcome out = footprint(a, templates);
  double cleared = 0.0;
  for (auto c : out.full_set) cleared += belief[c] ? 1.0 : 0.0;
  for (auto c : out.partial_set) cleared += belief[c] ? 1.0 - params.p_partial : 0.0;
  return cleared;
}

SuppressionModel::SuppressionModel(const Scenario& scenario, const SuppressPlannerConfig& cfg,
                                   const PropagationParams& params, const TemplateSet& templates, int minute)
    : scenario_(scenario), cfg_(cfg), params_(params), templates_(templates), internal_(scenario, params, minute) {}

std::vector<SuppressionModel::Action> SuppressionModel::legal_actions(const State& s) const {
  const std::vector<SuppressionActionSpec> drops = asr(s.burning, cfg_.asr_method, cfg_.quantile, scenario_);
  if (drops.empty()) return {std::nullopt};
  return {drops.begin(), drops.end()};
}

double SuppressionModel::advance(State& s, const Action& a, Rng& rng) const {
  const std::uint64_t key = rng.next();
  double reward = 0.0;
  switch (cfg_.reward) {
    case SuppressionRewardKind::localized: {
      if (!a) {
        internal_.advance(s.burning, s.fuel, cfg_.rollout, key);
        break;
      }
      BoolGrid reference = s.burning;
      FuelGrid reference_fuel = s.fuel;
      internal_.advance(reference, reference_fuel, cfg_.rollout, key);
      apply_outcome_in_place(s.burning, &s.fuel, footprint(*a, templates_), params_, hash_combine(key, kDropSalt));
      internal_.advance(s.burning, s.fuel, cfg_.rollout, key);
      const LocalWindow window{a->center, cfg_.rollout};
      reward = window.destruction(reference, scenario_.resources) - window.destruction(s.burning, scenario_.resources);
      break;
    }
    case SuppressionRewardKind::global: {
      if (a) {
        apply_outcome_in_place(s.burning, &s.fuel, footprint(*a, templates_), params_, hash_combine(key, kDropSalt));
      }
      internal_.advance(s.burning, s.fuel, cfg_.rollout, key);
      reward = -instantaneous_destruction(s.burning, scenario_.resources);
      break;
    }
    case SuppressionRewardKind::immediate: {
      if (a) {
        const int before = burning_count(s.burning);
        apply_outcome_in_place(s.burning, &s.fuel, footprint(*a, templates_), params_, hash_combine(key, kDropSalt));
        reward = before - burning_count(s.burning);
      }
      internal_.advance(s.burning, s.fuel, cfg_.rollout, key);
      break;
    }
  }
  ++s.depth;
  return reward;
}

std::pair<SuppressionModel::State, double> SuppressionModel::sample_transition(const State& s, const Action& a,
                                                                               Rng& rng) const {
  State next = s;
  const double reward = advance(next, a, rng);
  return {std::move(next), reward};
}

DropChoice plan_suppression(const BeliefState& belief, const Scenario& scenario, const SuppressPlannerConfig& cfg,
                            Rng& rng, const SuppressionOptions& options) {
  cfg.validate();
  const PropagationParams params = options.propagation.value_or(PropagationParams::defaults_for(scenario));
  const TemplateSet& templates = options.templates ? *options.templates : default_templates();

  // The immediate baseline is myopic: deeper search would reward leaving
  // fire alive for a later drop to clear.
  SuppressPlannerConfig effective = cfg;
  if (cfg.reward == SuppressionRewardKind::immediate) effective.mcts.max_depth = 1;
  const SuppressionModel model(scenario, effective, params, templates, options.minute);
  SuppressionModel::State root{belief.burning,
                               options.estimated_fuel ? *options.estimated_fuel
                                                      : FuelGrid(scenario.median_initial_fuel()),
                               0};
  const std::vector<DropChoice> legal = model.legal_actions(root);
  if (legal.size() == 1) return legal.front();
  return search(model, root, effective.mcts, rng);
}

std::vector<std::vector<CellIndex>> high_value_areas(const RealGrid& resources) {
  const auto values = resources.values();
  const double max_r = *std::max_element(values.begin(), values.end());
  std::vector<std::vector<CellIndex>> areas;
  if (max_r <= 0.0) return areas;
  const double threshold = 0.5 * max_r;
  std::vector<std::uint8_t> seen(kCellCount, 0);
  for (int start = 0; start < kCellCount; ++start) {
    if (seen[start] || resources.flat(start) < threshold) continue;
    std::vector<CellIndex> area;
    std::queue<int> frontier;
    frontier.push(start);
    seen[start] = 1;
    while (!frontier.empty()) {
      const int i = frontier.front();
      frontier.pop();
      area.push_back(CellIndex::from_flat(i));
      const int r = i / kGridSize, c = i % kGridSize;
      constexpr int kSteps[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
      for (const auto& s : kSteps) {
        const int nr = r + s[0], nc = c + s[1];
        if (!in_bounds(nr, nc)) continue;
        const int j = nr * kGridSize + nc;
        if (seen[j] || resources.flat(j) < threshold) continue;
        seen[j] = 1;
        frontier.push(j);
      }
    }
    std::sort(area.begin(), area.end());
    areas.push_back(std::move(area));
  }
  return areas;
}

bool resources_uneven(const RealGrid& resources) {
  double sum = 0.0, sq = 0.0;
  for (double r : resources.values()) {
    sum += r;
    sq += r * r;
  }
  const double mean = sum / kCellCount;
  if (mean <= 0.0) return false;
  const double var = std::max(0.0, sq / kCellCount - mean * mean);
  return std::sqrt(var) / mean > 0.5;
}

std::vector<SuppressionActionSpec> wet_line_drops(const std::vector<CellIndex>& area,
                                                  std::pair<double, double> fire_point) {
  require(!area.empty(), "wet_line_drops needs a non-empty area");
  int r0 = kGridSize, r1 = -1, c0 = kGridSize, c1 = -1;
  for (auto c : area) {
    r0 = std::min(r0, c.row());
    r1 = std::max(r1, c.row());
    c0 = std::min(c0, c.col());
    c1 = std::max(c1, c.col());
  }
  constexpr int kCore = 13;
  constexpr int kHalf = kCore / 2;
  // Segment centres along [lo, hi], each covering kCore cells.
  auto centres = [](int lo, int hi) {
    std::vector<int> out;
    const int length = hi - lo + 1;
    if (length <= kCore) {
      out.push_back((lo + hi) / 2);
      return out;
    }
    const int n = (length + kCore - 1) / kCore;
    for (int i = 0; i < n; ++i) out.push_back(std::min(lo + kHalf + kCore * i, hi - kHalf));
    return out;
  };

  struct Side {
    double mid_row, mid_col;
    std::vector<SuppressionActionSpec> drops;
  };
  std::vector<Side> sides;
  const double mid_r = 0.5 * (r0 + r1);
  const double mid_c = 0.5 * (c0 + c1);
  if (r0 - 1 >= 0) {
    Side s{static_cast<double>(r0 - 1), mid_c, {}};
    for (int cc : centres(c0 - 1, c1 + 1)) s.drops.push_back({clamped_cell(r0 - 1, cc), DropType::line_ew});
    sides.push_back(std::move(s));
  }
  if (r1 + 1 < kGridSize) {
    Side s{static_cast<double>(r1 + 1), mid_c, {}};
    for (int cc : centres(c0 - 1, c1 + 1)) s.drops.push_back({clamped_cell(r1 + 2, cc), DropType::line_ew});
    sides.push_back(std::move(s));
  }
  if (c0 - 1 >= 0) {
    Side s{mid_r, static_cast<double>(c0 - 1), {}};
    for (int rr : centres(r0 - 1, r1 + 1)) s.drops.push_back({clamped_cell(rr, c0 - 2), DropType::line_ns});
    sides.push_back(std::move(s));
  }
  if (c1 + 1 < kGridSize) {
    Side s{mid_r, static_cast<double>(c1 + 1), {}};
    for (int rr : centres(r0 - 1, r1 + 1)) s.drops.push_back({clamped_cell(rr, c1 + 1), DropType::line_ns});
    sides.push_back(std::move(s));
  }
  std::stable_sort(sides.begin(), sides.end(), [&](const Side& a, const Side& b) {
    return std::hypot(a.mid_row - fire_point.first, a.mid_col - fire_point.second) <
           std::hypot(b.mid_row - fire_point.first, b.mid_col - fire_point.second);
  });
  std::vector<SuppressionActionSpec> out;
  for (auto& s : sides) out.insert(out.end(), s.drops.begin(), s.drops.end());
  return out;
}

DropType perpendicular_line(double drow, double dcol) {
  const double len = std::hypot(drow, dcol);
  if (len == 0.0) return DropType::point;
  const double s = 1.0 / std::sqrt(2.0);
  // Line directions as (dcol, drow).
  const std::array<std::pair<DropType, std::array<double, 2>>, 4> lines{{
      {DropType::line_ns, {0.0, 1.0}},
      {DropType::line_ew, {1.0, 0.0}},
      {DropType::line_ne_sw, {s, -s}},
      {DropType::line_nw_se, {s, s}},
  }};
  DropType best = DropType::line_ns;
  double best_alignment = 2.0;
  for (const auto& [type, dir] : lines) {
    const double alignment = std::abs(dir[0] * dcol + dir[1] * drow) / len;
    if (alignment < best_alignment - 1e-12) {
      best_alignment = alignment;
      best = type;
    }
  }
  return best;
}

DropChoice firefighting_technique(const BoolGrid& belief, const Scenario& scenario, TechniqueMemory& memory) {
  if (!memory.initialized) {
    memory.initialized = true;
    if (resources_uneven(scenario.resources)) {
      const auto fire_point = burning_centroid(belief, scenario.origin);
      auto areas = high_value_areas(scenario.resources);
      auto area_distance = [&](const std::vector<CellIndex>& area) {
        double r = 0.0, c = 0.0;
        for (auto cell : area) {
          r += cell.row();
          c += cell.col();
        }
        const double n = static_cast<double>(area.size());
        return std::hypot(r / n - fire_point.first, c / n - fire_point.second);
      };
      std::stable_sort(areas.begin(), areas.end(),
                       [&](const auto& a, const auto& b) { return area_distance(a) < area_distance(b); });
      for (const auto& area : areas) {
        const auto drops = wet_line_drops(area, fire_point);
        memory.wet_line.insert(memory.wet_line.end(), drops.begin(), drops.end());
      }
    }
  }
  if (memory.next < memory.wet_line.size()) return memory.wet_line[memory.next++];

  const auto head = fire_head(belief, scenario.origin);
  if (!head) return std::nullopt;
  const auto [hr, hc] = *head;
  CellIndex target;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kCellCount; ++i) {
    if (!belief.flat(i)) continue;
    const double d = std::hypot(i / kGridSize - hr, i % kGridSize - hc);
    if (d < best) {
      best = d;
      target = CellIndex::from_flat(i);
    }
  }
  return SuppressionActionSpec{target, perpendicular_line(hr - scenario.origin.row(), hc - scenario.origin.col())};
}

}  // namespace wildfire
