#include "wildfire/drops.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wildfire {

namespace {

constexpr int kLineHalfLength = 6;  // 13-cell line core

std::vector<Offset> rotate_quarter(const std::vector<Offset>& offsets) {
  std::vector<Offset> out;
  out.reserve(offsets.size());
  for (auto o : offsets) out.push_back({o.dcol, -o.drow});
  return out;
}

// One-cell Moore ring around a set of offsets.
std::vector<Offset> moore_ring(const std::vector<Offset>& core) {
  const std::set<Offset> inside(core.begin(), core.end());
  std::set<Offset> ring;
  for (auto o : core) {
    for (const auto& d : kMooreOffsets) {
      const Offset n{o.drow + d[0], o.dcol + d[1]};
      if (!inside.contains(n)) ring.insert(n);
    }
  }
  return {ring.begin(), ring.end()};
}

FootprintTemplate with_ring(std::vector<Offset> core) {
  std::sort(core.begin(), core.end());
  FootprintTemplate t;
  t.partial_offsets = moore_ring(core);
  t.full_offsets = std::move(core);
  return t;
}

std::vector<Offset> sorted(std::vector<Offset> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Offset parse_offset(const std::string& text, int line_no) {
  std::istringstream in(text);
  Offset o;
  char comma = 0;
  if (!(in >> o.drow >> comma >> o.dcol) || comma != ',') {
    throw FileFormatError("templates line " + std::to_string(line_no) + ": expected 'drow,dcol'");
  }
  return o;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string to_string(DropType drop) {
  switch (drop) {
    case DropType::point: return "point";
    case DropType::line_ns: return "line_NS";
    case DropType::line_ew: return "line_EW";
    case DropType::line_ne_sw: return "line_NE_SW";
    case DropType::line_nw_se: return "line_NW_SE";
  }
  return "point";
}

DropType parse_drop_type(const std::string& text) {
  for (auto d : kDropTypes) {
    if (to_string(d) == text) return d;
  }
  throw ConfigError("unknown drop type '" + text + "'");
}

void FootprintTemplate::validate() const {
  const std::set<Offset> full(full_offsets.begin(), full_offsets.end());
  for (auto o : partial_offsets) {
    if (full.contains(o)) throw FileFormatError("template offset appears in both full and partial sets");
  }
}

TemplateSet TemplateSet::defaults() {
  std::vector<Offset> point;
  for (int r = -2; r <= 1; ++r) {
    for (int c = -2; c <= 1; ++c) point.push_back({r, c});
  }
  std::vector<Offset> line_ew;
  for (int r = -1; r <= 0; ++r) {
    for (int c = -kLineHalfLength; c <= kLineHalfLength; ++c) line_ew.push_back({r, c});
  }
  std::vector<Offset> line_nw_se;
  for (int i = -kLineHalfLength; i <= kLineHalfLength; ++i) {
    line_nw_se.push_back({i, i});
    line_nw_se.push_back({i, i + 1});
  }
  TemplateSet set;
  set.templates_[static_cast<int>(DropType::point)] = with_ring(point);
  set.templates_[static_cast<int>(DropType::line_ew)] = with_ring(line_ew);
  set.templates_[static_cast<int>(DropType::line_ns)] = with_ring(rotate_quarter(line_ew));
  set.templates_[static_cast<int>(DropType::line_nw_se)] = with_ring(line_nw_se);
  set.templates_[static_cast<int>(DropType::line_ne_sw)] = with_ring(rotate_quarter(line_nw_se));
  for (auto& t : set.templates_) t.partial_offsets = sorted(t.partial_offsets);
  return set;
}

TemplateSet TemplateSet::parse(std::istream& in) {
  TemplateSet set;
  std::array<bool, 5> seen{};
  int current = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw FileFormatError("templates line " + std::to_string(line_no) + ": bad section");
      try {
        current = static_cast<int>(parse_drop_type(line.substr(1, line.size() - 2)));
      } catch (const ConfigError& e) {
        throw FileFormatError("templates line " + std::to_string(line_no) + ": " + e.what());
      }
      seen[current] = true;
      continue;
    }
    if (current < 0) throw FileFormatError("templates line " + std::to_string(line_no) + ": entry before section");
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw FileFormatError("templates line " + std::to_string(line_no) + ": expected 'full:' or 'partial:'");
    }
    const std::string kind = trim(line.substr(0, colon));
    const Offset o = parse_offset(line.substr(colon + 1), line_no);
    if (kind == "full") {
      set.templates_[current].full_offsets.push_back(o);
    } else if (kind == "partial") {
      set.templates_[current].partial_offsets.push_back(o);
    } else {
      throw FileFormatError("templates line " + std::to_string(line_no) + ": unknown entry '" + kind + "'");
    }
  }
  for (auto d : kDropTypes) {
    if (!seen[static_cast<int>(d)]) throw FileFormatError("templates: missing section [" + to_string(d) + "]");
  }
  for (auto& t : set.templates_) {
    t.validate();
    t.full_offsets = sorted(t.full_offsets);
    t.partial_offsets = sorted(t.partial_offsets);
  }
  return set;
}

TemplateSet TemplateSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open template file " + path);
  return parse(in);
}

void TemplateSet::write(std::ostream& out) const {
  for (auto d : kDropTypes) {
    out << '[' << to_string(d) << "]\n";
    for (auto o : (*this)[d].full_offsets) out << "full: " << o.drow << ',' << o.dcol << '\n';
    for (auto o : (*this)[d].partial_offsets) out << "partial: " << o.drow << ',' << o.dcol << '\n';
  }
}

SuppressionOutcome footprint(const SuppressionActionSpec& action, const TemplateSet& templates) {
  const FootprintTemplate& t = templates[action.drop];
  SuppressionOutcome out;
  const int r0 = action.center.row();
  const int c0 = action.center.col();
  for (auto o : t.full_offsets) {
    if (in_bounds(r0 + o.drow, c0 + o.dcol)) out.full_set.emplace_back(r0 + o.drow, c0 + o.dcol);
  }
  for (auto o : t.partial_offsets) {
    if (in_bounds(r0 + o.drow, c0 + o.dcol)) out.partial_set.emplace_back(r0 + o.drow, c0 + o.dcol);
  }
  return out;
}

SuppressionOutcome footprint(const SuppressionActionSpec& action) {
  static const TemplateSet defaults = TemplateSet::defaults();
  return footprint(action, defaults);
}

AxisOfAdvance axis_of_advance(const SuppressionActionSpec& action, Point2 water_source) {
  const Point2 anchor = cell_center(action.center);
  const double s = 1.0 / std::sqrt(2.0);
  switch (action.drop) {
    case DropType::line_ns: return {anchor, {0.0, 1.0}};
    case DropType::line_ew: return {anchor, {1.0, 0.0}};
    case DropType::line_ne_sw: return {anchor, {s, -s}};
    case DropType::line_nw_se: return {anchor, {s, s}};
    case DropType::point: break;
  }
  const Point2 v = anchor - water_source;
  const double len = norm(v);
  if (len < 1e-9) return {anchor, {1.0, 0.0}};
  return {anchor, (1.0 / len) * v};
}

SuppressionTiming drop_cadence(double distance_km, double loaded_speed_kts, double unloaded_speed_kts,
                               double overhead_min) {
  require(distance_km >= 0.0 && loaded_speed_kts > 0.0 && unloaded_speed_kts > 0.0 && overhead_min >= 0.0,
          "drop_cadence: distance must be non-negative and speeds positive");
  constexpr double kKmPerNauticalMile = 1.852;
  const double loaded_min = 60.0 * distance_km / (loaded_speed_kts * kKmPerNauticalMile);
  const double unloaded_min = 60.0 * distance_km / (unloaded_speed_kts * kKmPerNauticalMile);
  SuppressionTiming timing;
  const double cycle = std::max(loaded_min, unloaded_min) + overhead_min;
  timing.k = std::max(1, static_cast<int>(std::ceil(cycle / timing.d_t - 1e-9)));
  return timing;
}

void apply_outcome_in_place(BoolGrid& grid, FuelGrid* fuel, const SuppressionOutcome& outcome,
                            const PropagationParams& params, std::uint64_t key) {
  for (auto c : outcome.full_set) {
    grid[c] = 0;
    if (fuel) (*fuel)[c] = std::max(0, (*fuel)[c] - params.gamma_full);
  }
  for (auto c : outcome.partial_set) {
    if (grid[c] && counter_uniform(key, static_cast<std::uint64_t>(c.flat())) >= params.p_partial) grid[c] = 0;
    if (fuel) (*fuel)[c] = std::max(0, (*fuel)[c] - params.gamma_partial);
  }
}

SuppressionResult apply_suppression(const BoolGrid& grid, const FuelGrid* fuel, const SuppressionActionSpec& action,
                                    const PropagationParams& params, Rng& rng, const TemplateSet& templates) {
  SuppressionResult result{grid, fuel ? std::optional<FuelGrid>(*fuel) : std::nullopt,
                           footprint(action, templates)};
  apply_outcome_in_place(result.burning, result.fuel ? &*result.fuel : nullptr, result.outcome, params, rng.next());
  return result;
}

SuppressionResult apply_suppression(const BoolGrid& grid, const FuelGrid* fuel, const SuppressionActionSpec& action,
                                    const PropagationParams& params, Rng& rng) {
  static const TemplateSet defaults = TemplateSet::defaults();
  return apply_suppression(grid, fuel, action, params, rng, defaults);
}

}  // namespace wildfire
