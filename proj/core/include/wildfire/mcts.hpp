#pragma once

#include <chrono>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "wildfire/errors.hpp"
#include "wildfire/rng.hpp"

namespace wildfire {

/// Domain interface for search. Actions must be totally ordered; the order
/// breaks ties and defines "lowest action".
template <class M>
concept GenerativeModel = requires(const M& m, const typename M::State& s, const typename M::Action& a, Rng& rng) {
  typename M::State;
  typename M::Action;
  { m.legal_actions(s) } -> std::convertible_to<std::vector<typename M::Action>>;
  { m.sample_transition(s, a, rng) } -> std::convertible_to<std::pair<typename M::State, double>>;
  { m.is_terminal(s) } -> std::convertible_to<bool>;
  { a < a } -> std::convertible_to<bool>;
};

/// Models may additionally offer an in-place transition to avoid state copies.
template <class M>
concept InPlaceModel = GenerativeModel<M> && requires(const M& m, typename M::State& s, const typename M::Action& a,
                                                      Rng& rng) {
  { m.advance(s, a, rng) } -> std::convertible_to<double>;
};

struct MctsConfig {
  double discount = 0.95;       // gamma
  double exploration_c = 100.0;
  int max_depth = 3;
  int iteration_limit = 1000;
  std::optional<double> time_limit_s;
  /// With a time limit, shrink max_depth so the estimated budget keeps two
  /// visits per joint path (see depth_schedule).
  bool schedule_depth = true;

  void validate() const {
    require(discount > 0.0 && discount <= 1.0, "discount must lie in (0,1]");
    require(exploration_c >= 0.0, "exploration constant must be non-negative");
    require(max_depth >= 1, "max_depth must be at least 1");
    require(iteration_limit >= 1, "iteration_limit must be at least 1");
    require(!time_limit_s || *time_limit_s > 0.0, "time limit must be positive");
  }
};

inline double uct_score(double child_value, int child_visits, int parent_visits, double c) {
  if (child_visits == 0) return std::numeric_limits<double>::infinity();
  if (c == 0.0) return child_value;
  return child_value + c * std::sqrt(std::log(static_cast<double>(parent_visits)) / child_visits);
}

/// Largest depth in {1,2,3} whose full tree gets at least two visits per
/// leaf within the budget.
inline int depth_schedule(int action_count_at_depth1, long long budget_iterations) {
  require(action_count_at_depth1 >= 1 && budget_iterations >= 1, "depth_schedule needs positive inputs");
  int best = 1;
  double leaves = 1.0;
  for (int d = 1; d <= 3; ++d) {
    leaves *= action_count_at_depth1;
    if (static_cast<double>(budget_iterations) >= 2.0 * leaves) best = d;
  }
  return best;
}

template <class Action>
struct RootChildStats {
  Action action;
  int visits = 0;
  double value = 0.0;
};

template <class Action>
struct SearchResult {
  Action action;
  std::vector<RootChildStats<Action>> children;  // in expansion order
  int iterations = 0;
  int depth_used = 0;
  int root_visits = 0;
};

namespace detail {

template <class Action>
struct Node {
  int visits = 0;
  double value = 0.0;  // running mean of discounted returns from the edge into this node
  std::vector<std::pair<Action, int>> children;
};

template <GenerativeModel M>
double transition(const M& model, typename M::State& state, const typename M::Action& a, Rng& rng) {
  if constexpr (InPlaceModel<M>) {
    return model.advance(state, a, rng);
  } else {
    auto [next, reward] = model.sample_transition(state, a, rng);
    state = std::move(next);
    return reward;
  }
}

}  // namespace detail

/// Open-loop UCT: tree nodes are action sequences and the state is resampled
/// from the root on every iteration. Single-threaded and deterministic for a
/// fixed rng when no time limit is set.
template <GenerativeModel M>
class Mcts {
 public:
  using State = typename M::State;
  using Action = typename M::Action;

  Mcts(const M& model, MctsConfig config) : model_(model), config_(config) { config_.validate(); }

  SearchResult<Action> run(const State& root_state, Rng& rng) {
    const std::vector<Action> root_actions = model_.legal_actions(root_state);
    if (root_actions.empty() || model_.is_terminal(root_state)) {
      throw DegenerateRoot("search root has no legal actions");
    }
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    std::optional<Clock::time_point> deadline;
    if (config_.time_limit_s) {
      deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*config_.time_limit_s));
    }

    int depth = config_.max_depth;
    if (deadline && config_.schedule_depth && depth > 1) {
      // Throughput probe at full depth; the probe tree is discarded.
      constexpr int kProbe = 8;
      reset();
      const auto probe_start = Clock::now();
      int done = 0;
      for (; done < kProbe && Clock::now() < *deadline; ++done) iterate(root_state, depth, rng);
      const double per_iteration =
          std::chrono::duration<double>(Clock::now() - probe_start).count() / std::max(1, done);
      const double remaining = std::chrono::duration<double>(*deadline - Clock::now()).count();
      const long long budget = std::min<long long>(
          config_.iteration_limit, static_cast<long long>(std::max(1.0, remaining / std::max(per_iteration, 1e-9))));
      depth = std::min(depth, depth_schedule(static_cast<int>(root_actions.size()), budget));
    }

    reset();
    int iterations = 0;
    while (iterations < config_.iteration_limit) {
      if (deadline && iterations > 0 && Clock::now() >= *deadline) break;
      iterate(root_state, depth, rng);
      ++iterations;
    }

    SearchResult<Action> result{root_actions.front(), {}, iterations, depth, nodes_[0].visits};
    const auto& root = nodes_[0];
    int best = -1;
    for (const auto& [action, idx] : root.children) {
      const auto& child = nodes_[idx];
      result.children.push_back({action, child.visits, child.value});
      if (best < 0) {
        best = idx;
        result.action = action;
        continue;
      }
      const auto& incumbent = nodes_[best];
      const bool better = child.visits > incumbent.visits ||
                          (child.visits == incumbent.visits &&
                           (child.value > incumbent.value || (child.value == incumbent.value && action < result.action)));
      if (better) {
        best = idx;
        result.action = action;
      }
    }
    return result;
  }

 private:
  void reset() {
    nodes_.clear();
    nodes_.push_back({});
    nodes_[0].visits = 1;
  }

  int child_of(const detail::Node<Action>& node, const Action& a) const {
    for (const auto& [action, idx] : node.children) {
      if (action == a) return idx;
    }
    return -1;
  }

  void iterate(const State& root_state, int max_depth, Rng& rng) {
    State state = root_state;
    path_.clear();
    rewards_.clear();
    int node = 0;
    int d = 0;
    bool expanded = false;
    while (d < max_depth && !expanded && !model_.is_terminal(state)) {
      const std::vector<Action> legal = model_.legal_actions(state);
      if (legal.empty()) break;
      int next = -1;
      const Action* chosen = nullptr;
      double best_score = -std::numeric_limits<double>::infinity();
      for (const auto& a : legal) {
        const int idx = child_of(nodes_[node], a);
        if (idx < 0) {
          chosen = &a;
          next = -1;
          break;
        }
        const double score =
            uct_score(nodes_[idx].value, nodes_[idx].visits, nodes_[node].visits, config_.exploration_c);
        if (chosen == nullptr || score > best_score) {
          best_score = score;
          chosen = &a;
          next = idx;
        }
      }
      if (next < 0) {
        next = static_cast<int>(nodes_.size());
        nodes_[node].children.emplace_back(*chosen, next);
        nodes_.push_back({});
        expanded = true;
      }
      rewards_.push_back(detail::transition(model_, state, *chosen, rng));
      path_.push_back(next);
      node = next;
      ++d;
    }

    // Random rollout to the depth limit.
    double tail = 0.0;
    double weight = 1.0;
    while (d < max_depth && !model_.is_terminal(state)) {
      const std::vector<Action> legal = model_.legal_actions(state);
      if (legal.empty()) break;
      const Action& a = legal[rng.below(legal.size())];
      tail += weight * detail::transition(model_, state, a, rng);
      weight *= config_.discount;
      ++d;
    }

    double ret = tail;
    for (std::size_t i = path_.size(); i-- > 0;) {
      ret = rewards_[i] + config_.discount * ret;
      auto& n = nodes_[path_[i]];
      ++n.visits;
      n.value += (ret - n.value) / n.visits;
    }
    ++nodes_[0].visits;
  }

  const M& model_;
  MctsConfig config_;
  std::vector<detail::Node<Action>> nodes_;
  std::vector<int> path_;
  std::vector<double> rewards_;
};

template <GenerativeModel M>
SearchResult<typename M::Action> search_with_stats(const M& model, const typename M::State& root_state,
                                                   const MctsConfig& config, Rng& rng) {
  Mcts<M> mcts(model, config);
  return mcts.run(root_state, rng);
}

/// Root action with the most visits; ties go to the higher value, then the
/// lower action.
template <GenerativeModel M>
typename M::Action search(const M& model, const typename M::State& root_state, const MctsConfig& config, Rng& rng) {
  return search_with_stats(model, root_state, config, rng).action;
}

}  // namespace wildfire
