#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cetana/core.hpp"
#include "cetana/memory.hpp"
#include "cetana/rng.hpp"

namespace cetana {

struct AttentionCaps {
  std::size_t body = 8;    // max |F|
  std::size_t action = 1;  // max |G|
};

// Transitions are pure in their arguments: same (c, w, rng stream, memory)
// always gives the same output. The run loop threads memory explicitly so
// nothing hides across calls.
using AgentTransition =
    std::function<Ceta(const Ceta&, const WorldState&, RandomnessSource&, AssocMemory&)>;
using WorldTransition =
    std::function<WorldState(const Ceta&, const WorldState&, RandomnessSource&)>;

struct AgentSpec {
  std::string name = "agent";
  std::set<std::string> factor_registry;
  std::set<std::string> action_registry;
  AttentionCaps attention;
  AssocMemory memory;
  AgentTransition transition;
};

struct BanditOutcome {
  FeelingTone feeling = FeelingTone::Neutral;
  double prob = 1.0;

  bool operator==(const BanditOutcome&) const = default;
};

// K arms, each a fixed feeling-tone distribution. The consequence of the
// action selected in the current ceta lands in the next ceta's feeling
// tone: built-in agents sample the posted distribution during their own
// transition, so both transitions still read only pre-step state.
// Optional cue: every cue_period ticks pixel 0 reads 1 and the next feeling
// is cue_reward regardless of action.
struct BanditParams {
  std::map<std::string, std::vector<BanditOutcome>> arms;
  std::int64_t cue_period = 0;  // 0 = no cue
  FeelingTone cue_reward = FeelingTone::Neutral;

  bool operator==(const BanditParams&) const = default;
};

// Two-state cellular grid (B3/S23, dead boundary). Selected actions of the
// form "set:X:Y" overwrite cell (X, Y) with 1 after the rule application.
struct GridParams {
  std::int64_t width = 8;
  std::int64_t height = 8;
  std::vector<std::pair<std::int64_t, std::int64_t>> alive;

  bool operator==(const GridParams&) const = default;
};

struct WorldSpec {
  std::string kind;
  WorldState initial;
  std::optional<BanditParams> bandit;
  std::optional<GridParams> grid;
  WorldTransition transition;
};

WorldSpec make_bandit_world(BanditParams params);
WorldSpec make_grid_world(GridParams params);
WorldSpec builtin_world(const std::string& kind);  // UnknownWorldKindError

// True on ticks where the bandit cue fires (pixel 0 of the world view).
bool bandit_cue_active(const WorldState& w);

// What an agent with n_pixels sensors sees of this world state.
std::vector<int> world_view(const WorldState& w, std::size_t n_pixels);

// Per-tick derived streams, agent partition first. Both step() and the
// scenario runner derive from the same master draw, so a plain run and an
// instrumented run see identical randomness.
struct TickStreams {
  RandomnessSource agent;
  RandomnessSource world;
  RandomnessSource meta;  // clamp drift and other run-level draws
};

TickStreams derive_tick_streams(RandomnessSource& master);

// RegistryMismatchError if c references factors or actions outside the
// agent's registries. Both transitions observe the same pre-step (c, w).
std::pair<Ceta, WorldState> step(const Ceta& c, const WorldState& w, RandomnessSource& master,
                                 AgentSpec& agent, const WorldSpec& world);

void validate_against_registries(const Ceta& c, const AgentSpec& agent);

// Stepping cursor; run() is a loop over it. Useful for continuing a run
// where another left off.
class Simulation {
public:
  Simulation(AgentSpec agent, WorldSpec world, Ceta c0, WorldState w0, std::uint64_t seed,
             std::string scenario_id = "");

  // Appends one entry to the trace. Throws RunError tagged with the tick.
  void advance();
  void advance(std::int64_t n_steps);

  const Trace& trace() const { return trace_; }
  Trace take_trace() && { return std::move(trace_); }
  AgentSpec& agent() { return agent_; }

private:
  AgentSpec agent_;
  WorldSpec world_;
  Trace trace_;
  RandomnessSource master_;
};

// Trace of length n_steps + 1 starting at (c0, w0). The agent spec is taken
// by value: the run mutates only its own copy of the memory.
Trace run(AgentSpec agent, const WorldSpec& world, Ceta c0, WorldState w0, std::uint64_t seed,
          std::int64_t n_steps, std::string scenario_id = "");

}  // namespace cetana
