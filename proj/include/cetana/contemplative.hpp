#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cetana/core.hpp"
#include "cetana/dynamics.hpp"

namespace cetana {

// Input/action clamp for concentration practice. From start_tick on, every
// emitted ceta carries the fixed inputs i0 = (pixels, focus, objects) and
// action a0, except on drift ticks: with probability drift_rate attention
// wanders for one tick (focus perturbed). With recovery enabled the next
// tick is clamped again; without it the stream free-runs once drifted.
struct ConcentrationConfig {
  std::vector<int> clamp_pixels;
  std::set<std::size_t> clamp_focus;
  std::set<MentalObject> clamp_objects;  // usually empty: mental activity settles
  std::set<std::string> clamp_action;
  std::int64_t start_tick = 0;
  double drift_rate = 0.0;
  bool recovery = true;
};

// Returns c with inputs and action replaced by the clamp values.
Ceta clamp_ceta(Ceta c, const ConcentrationConfig& cfg);

// A drifted tick: clamped except the focus is nudged off the meditation
// object (one extra index, or one removed when all are attended).
Ceta drift_ceta(Ceta c, const ConcentrationConfig& cfg);

// True when `emitted` deviates from the clamp on its inputs.
bool deviates_from_clamp(const Ceta& emitted, const ConcentrationConfig& cfg);

// One pipeline stage shared by concentrate_run and the scenario runner:
// decides clamp/drift/free for the proposed ceta given the previously
// emitted one. Draws at most one uniform from `meta`.
Ceta apply_concentration(const Ceta& prev_emitted, Ceta proposed, const ConcentrationConfig& cfg,
                         RandomnessSource& meta);

// run() with the concentration stage applied after each agent transition.
Trace concentrate_run(AgentSpec agent, const WorldSpec& world, Ceta c0, WorldState w0,
                      std::uint64_t seed, std::int64_t n_steps, const ConcentrationConfig& cfg,
                      std::string scenario_id = "");

// Earliest eventually-periodic description of the stream: the smallest
// start, then the smallest period, such that s[k] == s[k + period] for all
// observed k >= start, with at least one witnessed repeat.
struct LoopReport {
  std::int64_t start = 0;   // offset into the analyzed stream
  std::int64_t period = 1;  // cycle length
  MindState witness;        // the repeated mind-state at `start`

  bool operator==(const LoopReport&) const = default;
};

std::optional<LoopReport> detect_loop(const std::vector<MindState>& stream);

struct ResetEvent {
  std::int64_t reset_offset = 0;  // stream offset of the replaced ceta
  int aware_cycles = 0;
  double coverage = 0.0;

  bool operator==(const ResetEvent&) const = default;
};

// Fires when mindfulness covered at least `phi` of each of `m` consecutive
// full cycles of the loop; the event lands on the tick right after those
// cycles. applied_mask[k] says whether the mindfulness operator ran on
// stream offset k. LoopMismatchError when the report does not describe tr.
std::optional<ResetEvent> nibbana_reset(const Trace& tr, const LoopReport& loop,
                                        const std::vector<bool>& applied_mask, int m,
                                        double phi = 0.8);

// The objectless configuration spliced in at the reset: focus cleared,
// mental input emptied, neutral feeling, wrongView zeroed.
Ceta reset_ceta(Ceta proposed);

}  // namespace cetana
