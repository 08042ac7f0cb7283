#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wildfire/drops.hpp"
#include "wildfire/grid.hpp"
#include "wildfire/propagation.hpp"
#include "wildfire/suppression.hpp"
#include "wildfire/surveillance.hpp"
#include "wildfire/uav.hpp"

namespace wildfire {

/// Minutes at which aircraft arrive and the episode ends. Minutes run
/// 0 .. horizon-1; a drop at minute t shapes the step from t to t+1.
struct Timeline {
  int uav_arrival = 5;
  int manned_arrival = 15;
  int horizon = 120;
  int k = 5;

  void validate() const;
  /// Primary aircraft drop minutes: manned_arrival + i*k below horizon.
  bool is_drop_minute(int minute) const {
    return minute >= manned_arrival && minute < horizon && (minute - manned_arrival) % k == 0;
  }
  std::vector<int> drop_minutes() const;
  /// Offset of the second aircraft's cadence from the first.
  int second_aircraft_offset() const { return (k + 1) / 2; }
};

/// Ring radius samples taken at each suppression step.
class RingHistory {
 public:
  void add(int minute, double radius_m);
  const std::vector<std::pair<int, double>>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<std::pair<int, double>> samples_;
};

/// Least-squares line through the samples evaluated at `at_minute`.
double predict_ring(const RingHistory& history, int at_minute = 120);

struct DispatchPolicy {
  double time_threshold = 30.0;   // minutes
  double ring_threshold = 100.0;  // metres
  bool enabled = false;

  void validate() const;
};

/// True iff minute > time_threshold and the predicted ring at the horizon
/// exceeds ring_threshold. Fewer than two samples never dispatch.
bool early_dispatch_decision(const RingHistory& history, int minute, const DispatchPolicy& policy,
                             int horizon = 120);

/// Latching wrapper: stays true once triggered.
class DispatchLatch {
 public:
  bool update(const RingHistory& history, int minute, const DispatchPolicy& policy, int horizon = 120);
  bool dispatched() const { return minute_.has_value(); }
  std::optional<int> minute() const { return minute_; }

 private:
  std::optional<int> minute_;
};

enum class OutcomeClass { fully_suppressed, contained, escaped };

std::string to_string(OutcomeClass outcome);

enum class SuppressionPolicy { none, localized, global, immediate, technique };

std::string to_string(SuppressionPolicy policy);
SuppressionPolicy parse_suppression_policy(const std::string& text);

/// Ring bound of a 10-acre fire expressed as a mean ring radius.
inline constexpr double kContainmentRingBound = 100.0;

struct EpisodeConfig {
  Timeline timeline;
  bool surveillance_enabled = true;
  SurveillanceModelKind surveillance_kind = SurveillanceModelKind::uncertainty;
  MctsConfig surveillance_mcts = default_surveillance_mcts();
  PenaltyParams penalties;
  RangingParams ranging;
  SuppressionPolicy suppression_policy = SuppressionPolicy::localized;
  SuppressPlannerConfig suppression;
  DispatchPolicy dispatch;
  bool perfect_information = false;
  bool stop_at_boundary = true;
  std::optional<PropagationParams> propagation;  // defaults_for(scenario) when empty
  TemplateSet templates = TemplateSet::defaults();
  SurveillanceState drone_start{{4, 4, 2}, {5, 5, 2}};

  void validate() const;
};

struct EpisodeRow {
  int t = 0;
  int burning_count = 0;
  double destruction = 0.0;  // cumulative over cells that have burned
  double ring_radius_m = 0.0;
  std::optional<SurveillanceState> drones;
  std::vector<SuppressionActionSpec> drops;  // drops applied in this minute
  bool suppression_step = false;             // primary cadence minute
  bool dispatched = false;
  double burning_accuracy = 1.0;  // Jaccard index of believed vs true burning cells
  double belief_accuracy = 1.0;   // fraction of cells where belief matches truth
};

struct EpisodeLog {
  std::vector<EpisodeRow> rows;
  SpreadPreset preset = SpreadPreset::moderate;
  bool reached_boundary = false;
  RingHistory ring_history;  // belief-based samples used for dispatch
  std::optional<int> dispatch_minute;
  OutcomeClass outcome = OutcomeClass::escaped;
  int drop_count = 0;

  const EpisodeRow& final_row() const { return rows.back(); }
  void write_csv(std::ostream& out) const;
};

/// Window of suppression-step samples compared against the final radius.
int containment_window(SpreadPreset preset);

OutcomeClass classify_outcome(const EpisodeLog& log);

EpisodeLog run_episode(const Scenario& scenario, const EpisodeConfig& config, std::uint64_t seed);

/// Seed of a derived stream: world 1, surveillance 2, suppression 3,
/// ranging 4, second aircraft 5.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) { return hash_combine(seed, stream); }

}  // namespace wildfire
