#include "cetana/composition.hpp"

namespace cetana {

ActionEncoder ActionEncoder::one_hot(const std::set<std::string>& action_registry) {
  return ActionEncoder{std::vector<std::string>(action_registry.begin(), action_registry.end())};
}

std::vector<int> ActionEncoder::encode(const std::set<std::string>& selected) const {
  std::vector<int> pixels(domain.size(), 0);
  for (const auto& a : selected) {
    bool hit = false;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (domain[i] == a) {
        pixels[i] = 1;
        hit = true;
        break;
      }
    }
    if (!hit) throw EncoderMismatchError("action '" + a + "' has no encoding");
  }
  return pixels;
}

WorldState agent_as_world_state(const ActionEncoder& encoder,
                                const std::set<std::string>& selected) {
  WorldState w;
  w.kind = "composed";
  for (int v : encoder.encode(selected)) w.cells.push_back(v);
  return w;
}

ComposedTraces run_composed(const AgentSpec& agent_a, const AgentSpec& agent_b,
                            const ActionEncoder& encode_a_to_b,
                            const ActionEncoder& encode_b_to_a, Ceta c0a, Ceta c0b,
                            std::uint64_t seed_a, std::uint64_t seed_b, std::int64_t n_steps,
                            const std::string& run_id) {
  AgentSpec a = agent_a;
  AgentSpec b = agent_b;
  RandomnessSource master_a(seed_a);
  RandomnessSource master_b(seed_b);

  ComposedTraces out;
  out.a.t0 = c0a.t;
  out.a.seed = seed_a;
  out.a.scenario_id = run_id;
  out.b.t0 = c0b.t;
  out.b.seed = seed_b;
  out.b.scenario_id = run_id;

  Ceta ca = std::move(c0a);
  Ceta cb = std::move(c0b);
  WorldState wa = agent_as_world_state(encode_b_to_a, cb.action.selected);
  WorldState wb = agent_as_world_state(encode_a_to_b, ca.action.selected);
  out.a.append(ca, wa);
  out.b.append(cb, wb);

  for (std::int64_t k = 0; k < n_steps; ++k) {
    try {
      validate_against_registries(ca, a);
      validate_against_registries(cb, b);
      TickStreams streams_a = derive_tick_streams(master_a);
      TickStreams streams_b = derive_tick_streams(master_b);
      Ceta next_a = a.transition(ca, wa, streams_a.agent, a.memory);
      Ceta next_b = b.transition(cb, wb, streams_b.agent, b.memory);
      ca = std::move(next_a);
      cb = std::move(next_b);
      wa = agent_as_world_state(encode_b_to_a, cb.action.selected);
      wb = agent_as_world_state(encode_a_to_b, ca.action.selected);
      out.a.append(ca, wa);
      out.b.append(cb, wb);
    } catch (const Error& e) {
      throw RunError(ca.t, e.what());
    }
  }
  return out;
}

}  // namespace cetana
