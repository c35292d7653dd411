#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cetana/core.hpp"
#include "cetana/dynamics.hpp"

namespace cetana {

// Maps one agent's selected actions into the other's pixel space: one pixel
// slot per action id in the (sorted) domain, 1 when selected.
// EncoderMismatchError when a selected action has no slot.
struct ActionEncoder {
  std::vector<std::string> domain;

  static ActionEncoder one_hot(const std::set<std::string>& action_registry);
  std::vector<int> encode(const std::set<std::string>& selected) const;
};

// The world one agent presents to the other: just its encoded actions.
WorldState agent_as_world_state(const ActionEncoder& encoder,
                                const std::set<std::string>& selected);

struct ComposedTraces {
  Trace a;
  Trace b;
};

// Couples two agents by diverting each one's actions to the other's input.
// Each tick both transitions read the pre-step pair, so the construction is
// symmetric up to role swap, and an action takes exactly one tick per hop.
ComposedTraces run_composed(const AgentSpec& agent_a, const AgentSpec& agent_b,
                            const ActionEncoder& encode_a_to_b,
                            const ActionEncoder& encode_b_to_a, Ceta c0a, Ceta c0b,
                            std::uint64_t seed_a, std::uint64_t seed_b, std::int64_t n_steps,
                            const std::string& run_id = "");

}  // namespace cetana
