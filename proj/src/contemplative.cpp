#include "cetana/contemplative.hpp"

#include <unordered_map>

namespace cetana {

Ceta clamp_ceta(Ceta c, const ConcentrationConfig& cfg) {
  c.body.pixels = cfg.clamp_pixels;
  c.body.focus = cfg.clamp_focus;
  c.mental.objects = cfg.clamp_objects;
  c.action.selected = cfg.clamp_action;
  return c;
}

Ceta drift_ceta(Ceta c, const ConcentrationConfig& cfg) {
  c = clamp_ceta(std::move(c), cfg);
  const std::size_t n = c.body.pixels.size();
  if (n == 0) return c;
  if (c.body.focus.empty()) {
    c.body.focus.insert(0);
  } else if (c.body.focus.size() == n) {
    c.body.focus.erase(std::prev(c.body.focus.end()));
  } else {
    // Rotating a proper nonempty subset always lands somewhere else and
    // keeps |F| within whatever capacity the clamp already satisfied.
    std::set<std::size_t> rotated;
    for (auto idx : c.body.focus) rotated.insert((idx + 1) % n);
    c.body.focus = std::move(rotated);
  }
  return c;
}

bool deviates_from_clamp(const Ceta& emitted, const ConcentrationConfig& cfg) {
  return emitted.body.pixels != cfg.clamp_pixels || emitted.body.focus != cfg.clamp_focus ||
         emitted.mental.objects != cfg.clamp_objects;
}

Ceta apply_concentration(const Ceta& prev_emitted, Ceta proposed, const ConcentrationConfig& cfg,
                         RandomnessSource& meta) {
  if (proposed.t < cfg.start_tick) return proposed;
  if (!cfg.recovery && prev_emitted.t >= cfg.start_tick &&
      deviates_from_clamp(prev_emitted, cfg)) {
    return proposed;  // attention lost and nothing brings it back
  }
  if (meta.bernoulli(cfg.drift_rate)) return drift_ceta(std::move(proposed), cfg);
  return clamp_ceta(std::move(proposed), cfg);
}

Trace concentrate_run(AgentSpec agent, const WorldSpec& world, Ceta c0, WorldState w0,
                      std::uint64_t seed, std::int64_t n_steps, const ConcentrationConfig& cfg,
                      std::string scenario_id) {
  RandomnessSource master(seed);
  Trace tr;
  tr.t0 = c0.t;
  tr.seed = seed;
  tr.scenario_id = std::move(scenario_id);
  if (c0.t >= cfg.start_tick) c0 = clamp_ceta(std::move(c0), cfg);
  tr.append(std::move(c0), std::move(w0));
  for (std::int64_t k = 0; k < n_steps; ++k) {
    const TraceEntry& cur = tr.entries.back();
    try {
      validate_against_registries(cur.ceta, agent);
      TickStreams streams = derive_tick_streams(master);
      Ceta proposed = agent.transition(cur.ceta, cur.world, streams.agent, agent.memory);
      WorldState next_w = world.transition(cur.ceta, cur.world, streams.world);
      Ceta emitted = apply_concentration(cur.ceta, std::move(proposed), cfg, streams.meta);
      tr.append(std::move(emitted), std::move(next_w));
    } catch (const Error& e) {
      throw RunError(cur.ceta.t, e.what());
    }
  }
  return tr;
}

namespace {

// s[k] == s[k + p] for every observed k >= start, with the repeat at
// (start, start + p) actually witnessed.
bool valid_loop(const std::vector<MindState>& stream, std::size_t start, std::size_t period) {
  const std::size_t n = stream.size();
  if (start + period >= n) return false;
  for (std::size_t k = start; k + period < n; ++k) {
    if (!(stream[k] == stream[k + period])) return false;
  }
  return true;
}

}  // namespace

std::optional<LoopReport> detect_loop(const std::vector<MindState>& stream) {
  const std::size_t n = stream.size();
  std::unordered_map<MindState, std::size_t, MindStateHash> seen;
  seen.reserve(n);
  std::size_t first = 0;
  std::size_t repeat = 0;
  bool found = false;
  for (std::size_t j = 0; j < n; ++j) {
    auto [it, inserted] = seen.try_emplace(stream[j], j);
    if (!inserted) {
      first = it->second;
      repeat = j;
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;

  if (valid_loop(stream, first, repeat - first)) {
    return LoopReport{static_cast<std::int64_t>(first),
                      static_cast<std::int64_t>(repeat - first), stream[first]};
  }
  // The first repeat does not describe the whole tail (possible on noisy
  // streams); fall back to the minimal scan.
  for (std::size_t s = 0; s + 1 < n; ++s) {
    for (std::size_t p = 1; s + p < n; ++p) {
      if (valid_loop(stream, s, p)) {
        return LoopReport{static_cast<std::int64_t>(s), static_cast<std::int64_t>(p), stream[s]};
      }
    }
  }
  return std::nullopt;
}

std::optional<ResetEvent> nibbana_reset(const Trace& tr, const LoopReport& loop,
                                        const std::vector<bool>& applied_mask, int m,
                                        double phi) {
  const auto stream = mind_state_stream(tr);
  const std::size_t n = stream.size();
  if (loop.start < 0 || loop.period < 1 ||
      static_cast<std::size_t>(loop.start + loop.period) >= n ||
      !valid_loop(stream, static_cast<std::size_t>(loop.start),
                  static_cast<std::size_t>(loop.period))) {
    throw LoopMismatchError("loop report does not describe this trace");
  }
  if (m < 1) throw OutOfRangeError("awareness cycle count must be >= 1");

  const auto start = static_cast<std::size_t>(loop.start);
  const auto period = static_cast<std::size_t>(loop.period);
  const std::size_t full_cycles = (n - start) / period;

  auto coverage = [&](std::size_t cycle) {
    std::size_t hits = 0;
    for (std::size_t k = start + cycle * period; k < start + (cycle + 1) * period; ++k) {
      if (k < applied_mask.size() && applied_mask[k]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(period);
  };

  std::size_t consecutive = 0;
  for (std::size_t cycle = 0; cycle < full_cycles; ++cycle) {
    const double cov = coverage(cycle);
    consecutive = cov >= phi ? consecutive + 1 : 0;
    if (consecutive == static_cast<std::size_t>(m)) {
      ResetEvent ev;
      ev.reset_offset = static_cast<std::int64_t>(start + (cycle + 1) * period);
      ev.aware_cycles = m;
      ev.coverage = cov;
      return ev;
    }
  }
  return std::nullopt;
}

Ceta reset_ceta(Ceta proposed) {
  proposed.body.focus.clear();
  proposed.mental.objects.clear();
  proposed.mind.feeling = FeelingTone::Neutral;
  auto it = proposed.mind.factors.find("wrongView");
  if (it != proposed.mind.factors.end()) it->second = 0.0;
  return proposed;
}

}  // namespace cetana
