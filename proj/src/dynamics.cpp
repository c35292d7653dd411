#include "cetana/dynamics.hpp"

#include <algorithm>

namespace cetana {

namespace {

constexpr std::int64_t kGridHeader = 2;  // cells = [width, height, grid...]

int grid_at(const WorldState& w, std::int64_t x, std::int64_t y) {
  const std::int64_t width = w.cells[0];
  const std::int64_t height = w.cells[1];
  if (x < 0 || y < 0 || x >= width || y >= height) return 0;
  return static_cast<int>(w.cells[static_cast<std::size_t>(kGridHeader + y * width + x)]);
}

WorldState grid_step(const Ceta& c, const WorldState& w) {
  const std::int64_t width = w.cells[0];
  const std::int64_t height = w.cells[1];
  WorldState next = w;
  for (std::int64_t y = 0; y < height; ++y) {
    for (std::int64_t x = 0; x < width; ++x) {
      int n = 0;
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          n += grid_at(w, x + dx, y + dy);
        }
      }
      const bool alive = grid_at(w, x, y) == 1;
      const bool next_alive = alive ? (n == 2 || n == 3) : (n == 3);
      next.cells[static_cast<std::size_t>(kGridHeader + y * width + x)] = next_alive ? 1 : 0;
    }
  }
  for (const auto& a : c.action.selected) {
    if (a.rfind("set:", 0) != 0) continue;
    const auto sep = a.find(':', 4);
    if (sep == std::string::npos) continue;
    const std::int64_t x = std::stoll(a.substr(4, sep - 4));
    const std::int64_t y = std::stoll(a.substr(sep + 1));
    if (x >= 0 && y >= 0 && x < width && y < height) {
      next.cells[static_cast<std::size_t>(kGridHeader + y * width + x)] = 1;
    }
  }
  return next;
}

}  // namespace

WorldSpec make_bandit_world(BanditParams params) {
  WorldSpec spec;
  spec.kind = "rewardBandit";
  spec.bandit = std::move(params);
  // cells = [cue counter, cue period]; the distributions are posted on the
  // spec, the evolving state is just the cue clock.
  spec.initial = WorldState{"rewardBandit", {0, spec.bandit->cue_period}};
  spec.transition = [](const Ceta&, const WorldState& w, RandomnessSource&) {
    WorldState next = w;
    const std::int64_t period = w.cells[1];
    next.cells[0] = period > 0 ? (w.cells[0] + 1) % period : 0;
    return next;
  };
  return spec;
}

WorldSpec make_grid_world(GridParams params) {
  WorldSpec spec;
  spec.kind = "grid";
  spec.grid = std::move(params);
  WorldState init;
  init.kind = "grid";
  init.cells.assign(static_cast<std::size_t>(kGridHeader + spec.grid->width * spec.grid->height),
                    0);
  init.cells[0] = spec.grid->width;
  init.cells[1] = spec.grid->height;
  for (const auto& [x, y] : spec.grid->alive) {
    if (x >= 0 && y >= 0 && x < spec.grid->width && y < spec.grid->height) {
      init.cells[static_cast<std::size_t>(kGridHeader + y * spec.grid->width + x)] = 1;
    }
  }
  spec.initial = std::move(init);
  spec.transition = [](const Ceta& c, const WorldState& w, RandomnessSource&) {
    return grid_step(c, w);
  };
  return spec;
}

WorldSpec builtin_world(const std::string& kind) {
  if (kind == "grid") return make_grid_world(GridParams{});
  if (kind == "rewardBandit") {
    BanditParams p;
    p.arms["a1"] = {BanditOutcome{FeelingTone::Pleasant, 1.0}};
    p.arms["a2"] = {BanditOutcome{FeelingTone::Unpleasant, 1.0}};
    return make_bandit_world(std::move(p));
  }
  throw UnknownWorldKindError("unknown world kind: " + kind);
}

bool bandit_cue_active(const WorldState& w) {
  return w.kind == "rewardBandit" && w.cells.size() >= 2 && w.cells[1] > 0 && w.cells[0] == 0;
}

std::vector<int> world_view(const WorldState& w, std::size_t n_pixels) {
  std::vector<int> pixels(n_pixels, 0);
  if (w.kind == "rewardBandit") {
    if (n_pixels > 0) pixels[0] = bandit_cue_active(w) ? 1 : 0;
  } else if (w.kind == "grid") {
    const std::size_t n = std::min(n_pixels, w.cells.size() - static_cast<std::size_t>(kGridHeader));
    for (std::size_t i = 0; i < n; ++i) {
      pixels[i] = static_cast<int>(w.cells[static_cast<std::size_t>(kGridHeader) + i]);
    }
  } else {
    const std::size_t n = std::min(n_pixels, w.cells.size());
    for (std::size_t i = 0; i < n; ++i) pixels[i] = static_cast<int>(w.cells[i]);
  }
  return pixels;
}

TickStreams derive_tick_streams(RandomnessSource& master) {
  const std::uint64_t d = master.next_u64();
  RandomnessSource base(d);
  return TickStreams{base.fork(0), base.fork(1), base.fork(2)};
}

void validate_against_registries(const Ceta& c, const AgentSpec& agent) {
  for (const auto& [name, v] : c.mind.factors) {
    if (!agent.factor_registry.count(name)) {
      throw RegistryMismatchError("factor '" + name + "' not in registry");
    }
    if (v < 0.0 || v > 1.0) {
      throw RegistryMismatchError("factor '" + name + "' intensity outside [0,1]");
    }
  }
  for (const auto& a : c.action.menu) {
    if (!agent.action_registry.count(a)) {
      throw RegistryMismatchError("action '" + a + "' not in registry");
    }
  }
  for (const auto& a : c.action.selected) {
    if (!c.action.menu.count(a)) {
      throw RegistryMismatchError("selected action '" + a + "' not in menu");
    }
  }
  for (const auto& o : c.mental.objects) {
    if (o.kind == MentalObjectKind::Quote && o.source >= c.t) {
      throw RegistryMismatchError("quote of tick " + std::to_string(o.source) +
                                  " inside the ceta at tick " + std::to_string(c.t));
    }
  }
}

std::pair<Ceta, WorldState> step(const Ceta& c, const WorldState& w, RandomnessSource& master,
                                 AgentSpec& agent, const WorldSpec& world) {
  validate_against_registries(c, agent);
  TickStreams streams = derive_tick_streams(master);
  Ceta next_c = agent.transition(c, w, streams.agent, agent.memory);
  WorldState next_w = world.transition(c, w, streams.world);
  return {std::move(next_c), std::move(next_w)};
}

Simulation::Simulation(AgentSpec agent, WorldSpec world, Ceta c0, WorldState w0,
                       std::uint64_t seed, std::string scenario_id)
    : agent_(std::move(agent)), world_(std::move(world)), master_(seed) {
  trace_.t0 = c0.t;
  trace_.seed = seed;
  trace_.scenario_id = std::move(scenario_id);
  trace_.append(std::move(c0), std::move(w0));
}

void Simulation::advance() {
  const TraceEntry& cur = trace_.entries.back();
  const std::int64_t tick = cur.ceta.t;
  try {
    auto [c, w] = step(cur.ceta, cur.world, master_, agent_, world_);
    trace_.append(std::move(c), std::move(w));
  } catch (const RunError&) {
    throw;
  } catch (const Error& e) {
    throw RunError(tick, e.what());
  }
}

void Simulation::advance(std::int64_t n_steps) {
  for (std::int64_t i = 0; i < n_steps; ++i) advance();
}

Trace run(AgentSpec agent, const WorldSpec& world, Ceta c0, WorldState w0, std::uint64_t seed,
          std::int64_t n_steps, std::string scenario_id) {
  Simulation sim(std::move(agent), world, std::move(c0), std::move(w0), seed,
                 std::move(scenario_id));
  sim.advance(n_steps);
  return std::move(sim).take_trace();
}

}  // namespace cetana
