#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "cetana/batch.hpp"
#include "cetana/core.hpp"
#include "cetana/dynamics.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cetana {

// Inclusive tick range, in absolute trace time.
struct TickWindow {
  std::int64_t first = 0;
  std::int64_t last = 0;

  bool operator==(const TickWindow&) const = default;
};

TickWindow full_window(const Trace& tr);

// Mean over the window of max(0, -feeling). EmptyWindowError when the
// window misses the trace.
double pain_metric(const Trace& tr, TickWindow window);

// 1 - normalized entropy of the action-selection distribution: 1 when a
// single action (or none) is ever used, 0 when selections are uniform over
// the menu. Window must cover at least two ticks.
double rigidity_metric(const Trace& tr, TickWindow window);

struct LackOptions {
  double theta = kPresenceTheta;
  double fear_threshold = 0.5;
};

// A Lack tick has, jointly: mindfulness present, a quote of the mind-state
// stream in the mental input, and fear at or above the threshold. Maximal
// runs of consecutive Lack ticks count as one episode.
int lack_event_count(const Trace& tr, TickWindow window, const LackOptions& opts = {});
bool is_lack_tick(const Ceta& c, const LackOptions& opts = {});

// Mean per-tick count of self-tagged concepts in the mental input.
double selfing_score(const Trace& tr, TickWindow window, const std::set<std::string>& self_ids);

struct ThreeCharacteristics {
  double compoundness = 0.0;   // mean count of groups with non-default content
  double fluctuation = 0.0;    // mean per-tick coordinate changes of the mind-state
  double impersonality = 0.0;  // 1 - selfing, clamped to [0, 1]

  bool operator==(const ThreeCharacteristics&) const = default;
};

ThreeCharacteristics three_characteristics(const Trace& tr, TickWindow window,
                                           const std::set<std::string>& self_ids,
                                           double theta = kPresenceTheta);

enum class Wholesomeness { Wholesome, Unwholesome, Neutral };

const char* wholesomeness_name(Wholesomeness w);

struct WholesomeResult {
  double score = 0.0;  // E[pain | forced] - E[pain | baseline]
  Wholesomeness verdict = Wholesomeness::Neutral;
};

// Compares "intend `action_id` now" against the agent's own unforced choice:
// each rollout steps once from (c, w), overrides (forced arm) or keeps
// (baseline arm) the selection of that first stepped ceta, then measures
// mean pain over the following `horizon` ticks. Rollout i is seeded
// base_seed + i on both arms, and rollouts are independent, so the parallel
// policy gives bitwise-identical scores.
WholesomeResult wholesome_classify(const std::string& action_id, const Ceta& c,
                                   const WorldState& w, const AgentSpec& agent,
                                   const WorldSpec& world, int horizon, int n_rollouts,
                                   std::uint64_t base_seed, double epsilon = 0.05,
                                   ExecPolicy policy = ExecPolicy::Parallel);

struct SufferingReport {
  double pain = 0.0;
  double rigidity = 0.0;
  int lack_events = 0;
  TickWindow window;
};

SufferingReport suffering_report(const Trace& tr, TickWindow window,
                                 const LackOptions& opts = {});

nlohmann::json to_json(const SufferingReport& r);

}  // namespace cetana
