#include "cetana/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "cetana/trace_io.hpp"

#include <nlohmann/json.hpp>

namespace cetana {

namespace {

constexpr const char* kCueId = "bell";
constexpr const char* kCueTargetId = "food";

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::set<std::size_t> default_focus(std::size_t n_pixels, std::size_t cap) {
  std::set<std::size_t> f;
  for (std::size_t i = 0; i < std::min(n_pixels, cap); ++i) f.insert(i);
  return f;
}

FeelingTone sample_outcome(const std::vector<BanditOutcome>& outcomes, RandomnessSource& rng) {
  const double u = rng.next_unit();
  double acc = 0.0;
  for (const auto& o : outcomes) {
    acc += o.prob;
    if (u < acc) return o.feeling;
  }
  return outcomes.back().feeling;
}

struct Policy {
  enum class Kind { Uniform, Fixed, AngerBias, Echo } kind = Kind::Uniform;
  std::string action;

  static Policy parse(const std::string& text) {
    Policy p;
    if (text == "uniform") {
      p.kind = Kind::Uniform;
    } else if (text == "echo") {
      p.kind = Kind::Echo;
    } else if (text.rfind("fixed:", 0) == 0) {
      p.kind = Kind::Fixed;
      p.action = text.substr(6);
    } else if (text.rfind("angerBias:", 0) == 0) {
      p.kind = Kind::AngerBias;
      p.action = text.substr(10);
    } else {
      throw OutOfRangeError("unknown policy '" + text + "'");
    }
    return p;
  }
};

bool bandit_bell(const Ceta& c) { return !c.body.pixels.empty() && c.body.pixels[0] == 1; }

AgentSpec build_agent_with(const Scenario& s, const std::string& policy_text,
                           std::size_t n_pixels) {
  const ScenarioAgent ag = s.agent;
  const Policy policy = Policy::parse(policy_text);
  const std::optional<BanditParams> bandit = [&]() -> std::optional<BanditParams> {
    if (s.world.kind != "rewardBandit") return std::nullopt;
    BanditParams p;
    p.cue_period = s.world.cue_period;
    p.cue_reward = static_cast<FeelingTone>(s.world.cue_reward);
    for (const auto& a : s.world.actions) {
      auto it = s.world.rewards.find(a);
      p.arms[a] = it != s.world.rewards.end()
                      ? it->second
                      : std::vector<BanditOutcome>{BanditOutcome{FeelingTone::Neutral, 1.0}};
    }
    return p;
  }();
  const bool memory_on = s.memory.enabled && bandit && bandit->cue_period > 0;
  const std::vector<std::string> self_concepts = s.metrics.self_concepts;
  const std::vector<int> cycle = ag.cycle_feelings;
  const std::int64_t t0 = s.t0;

  AgentSpec spec;
  spec.name = s.id;
  spec.factor_registry = s.factor_registry();
  spec.action_registry.insert(s.world.actions.begin(), s.world.actions.end());
  spec.attention = AttentionCaps{ag.attention, ag.action_attention};
  spec.memory = AssocMemory(s.memory.capacity, s.memory.reliability, s.memory.activation);

  const std::vector<std::string> action_list(spec.action_registry.begin(),
                                             spec.action_registry.end());

  spec.transition = [=](const Ceta& c, const WorldState& w, RandomnessSource& rng,
                        AssocMemory& memory) {
    Ceta next;
    next.t = c.t + 1;
    next.body.pixels = world_view(w, n_pixels);
    next.body.focus = default_focus(next.body.pixels.size(), ag.attention);

    // Feeling first: factor dynamics react to the arriving tone.
    if (!cycle.empty()) {
      const std::int64_t len = static_cast<std::int64_t>(cycle.size());
      const std::int64_t idx = ((next.t - t0) % len + len) % len;
      next.mind.feeling = static_cast<FeelingTone>(cycle[static_cast<std::size_t>(idx)]);
    } else if (bandit) {
      if (bandit->cue_period > 0 && bandit_bell(c)) {
        next.mind.feeling = bandit->cue_reward;
      } else if (!c.action.selected.empty()) {
        auto it = bandit->arms.find(*c.action.selected.begin());
        next.mind.feeling =
            it != bandit->arms.end() ? sample_outcome(it->second, rng) : FeelingTone::Neutral;
      } else {
        next.mind.feeling = FeelingTone::Neutral;
      }
    } else {
      next.mind.feeling = FeelingTone::Neutral;
    }

    const double pain_in = std::max(0, -numeric(next.mind.feeling));
    const bool exposure = c.mental.contains_quote_content("mind");
    next.mind.factors = c.mind.factors;
    for (auto& [name, v] : next.mind.factors) {
      if (name == "anger") {
        v = clamp01(v * (1.0 - ag.anger_decay) + ag.anger_gain * pain_in);
      } else if (name == "fear") {
        v *= (1.0 - ag.fear_decay);
        if (exposure) v = std::max(v, ag.fear_on_exposure);
        v = clamp01(v);
      } else if (name == "wrongView") {
        // persistent until something resets it
      } else {
        v = clamp01(v * (1.0 - ag.factor_decay));
      }
    }

    if (memory_on) {
      if (bandit_bell(c)) memory.observe_pair(kCueId, kCueTargetId, next.t);
      if (bandit_bell(next)) {
        if (auto hit = memory.recall(kCueId, rng, next.t)) {
          next.mental.objects.insert(make_concept(*hit));
        }
      }
    }
    if (ag.self_rate > 0.0) {
      for (const auto& id : self_concepts) {
        if (rng.bernoulli(ag.self_rate)) next.mental.objects.insert(make_concept(id));
      }
    }

    next.action.menu = std::set<std::string>(action_list.begin(), action_list.end());
    switch (policy.kind) {
      case Policy::Kind::Uniform:
        next.action.selected = {action_list[rng.next_below(action_list.size())]};
        break;
      case Policy::Kind::Fixed:
        next.action.selected = {policy.action};
        break;
      case Policy::Kind::AngerBias: {
        const double p = clamp01(ag.policy_base + ag.policy_gain * next.mind.intensity("anger"));
        if (rng.bernoulli(p) || action_list.size() == 1) {
          next.action.selected = {policy.action};
        } else {
          std::vector<std::string> others;
          for (const auto& a : action_list) {
            if (a != policy.action) others.push_back(a);
          }
          next.action.selected = {others[rng.next_below(others.size())]};
        }
        break;
      }
      case Policy::Kind::Echo: {
        for (std::size_t i = 0; i < action_list.size() && i < next.body.pixels.size(); ++i) {
          if (next.body.pixels[i] == 1 && next.action.selected.size() < ag.action_attention) {
            next.action.selected.insert(action_list[i]);
          }
        }
        break;
      }
    }
    return next;
  };
  return spec;
}

Ceta initial_ceta(const Scenario& s, const AgentSpec& agent, const WorldState& w0,
                  std::size_t n_pixels) {
  Ceta c0;
  c0.t = s.t0;
  c0.body.pixels = world_view(w0, n_pixels);
  c0.body.focus = default_focus(c0.body.pixels.size(), s.agent.attention);
  for (const auto& name : agent.factor_registry) {
    auto it = s.agent.init.find(name);
    c0.mind.factors[name] = it != s.agent.init.end() ? it->second : 0.0;
  }
  c0.action.menu = agent.action_registry;
  return c0;
}

MindfulnessConfig mindfulness_config(const Scenario& s) {
  MindfulnessConfig cfg;
  cfg.enabled = s.mindfulness.enabled;
  cfg.sharpness = s.mindfulness.sharpness;
  cfg.strength = s.mindfulness.strength;
  cfg.right = s.mindfulness.right;
  cfg.rho = s.mindfulness.rho;
  cfg.equanimity_floor = s.mindfulness.equanimity_floor;
  cfg.theta = s.agent.theta;
  cfg.quote_focus = s.mindfulness.quote_focus;
  cfg.unwholesome = std::set<std::string>(s.mindfulness.unwholesome.begin(),
                                          s.mindfulness.unwholesome.end());
  return cfg;
}

ConcentrationConfig concentration_config(const Scenario& s) {
  ConcentrationConfig cfg;
  cfg.clamp_pixels = s.concentration.pixels
                         ? *s.concentration.pixels
                         : std::vector<int>(s.agent.pixels, 0);
  if (s.concentration.focus) {
    cfg.clamp_focus = *s.concentration.focus;
  } else if (!cfg.clamp_pixels.empty()) {
    cfg.clamp_focus = {0};
  }
  cfg.clamp_action = s.concentration.action;
  cfg.start_tick = s.concentration.start_tick;
  cfg.drift_rate = s.concentration.drift_rate;
  cfg.recovery = s.concentration.recovery;
  return cfg;
}

Execution execute_composed(const Scenario& s) {
  const std::size_t width = s.world.actions.size();
  AgentSpec agent_a = build_agent_with(s, s.agent.policy, width);
  AgentSpec agent_b = build_agent_with(s, s.composition.policy_b, width);
  const ActionEncoder enc = ActionEncoder::one_hot(agent_a.action_registry);
  const std::uint64_t seed_b =
      s.composition.seed_b != 0 ? s.composition.seed_b : s.seed + 1;

  Ceta c0a = initial_ceta(s, agent_a, agent_as_world_state(enc, {}), width);
  Ceta c0b = initial_ceta(s, agent_b, agent_as_world_state(enc, {}), width);
  ComposedTraces traces =
      run_composed(agent_a, agent_b, enc, enc, c0a, c0b, s.seed, seed_b, s.steps, s.id);

  Execution ex;
  ex.trace = std::move(traces.a);
  ex.trace_b = std::move(traces.b);
  ex.applied_mask.assign(ex.trace.size(), false);
  return ex;
}

}  // namespace

BuiltScenario build_scenario(const Scenario& s) {
  BuiltScenario b;
  if (s.world.kind == "rewardBandit") {
    BanditParams p;
    p.cue_period = s.world.cue_period;
    p.cue_reward = static_cast<FeelingTone>(s.world.cue_reward);
    for (const auto& a : s.world.actions) {
      auto it = s.world.rewards.find(a);
      p.arms[a] = it != s.world.rewards.end()
                      ? it->second
                      : std::vector<BanditOutcome>{BanditOutcome{FeelingTone::Neutral, 1.0}};
    }
    b.world = make_bandit_world(std::move(p));
  } else if (s.world.kind == "grid") {
    GridParams p;
    p.width = s.world.width;
    p.height = s.world.height;
    p.alive = s.world.alive;
    b.world = make_grid_world(std::move(p));
  } else {
    throw UnknownWorldKindError("unknown world kind: " + s.world.kind);
  }
  b.agent = build_agent_with(s, s.agent.policy, s.agent.pixels);
  b.w0 = b.world.initial;
  b.c0 = initial_ceta(s, b.agent, b.w0, s.agent.pixels);
  b.mindfulness = mindfulness_config(s);
  b.concentration = concentration_config(s);
  b.concentration_enabled = s.concentration.enabled;
  return b;
}

Execution execute_scenario(const Scenario& s) {
  if (s.composition.enabled) return execute_composed(s);

  BuiltScenario built = build_scenario(s);
  AgentSpec& agent = built.agent;
  const std::vector<bool> mask =
      mindfulness_mask(built.mindfulness, static_cast<std::size_t>(s.steps) + 1);

  Execution ex;
  ex.trace.t0 = s.t0;
  ex.trace.seed = s.seed;
  ex.trace.scenario_id = s.id;
  if (built.concentration_enabled && built.c0.t >= built.concentration.start_tick) {
    built.c0 = clamp_ceta(std::move(built.c0), built.concentration);
  }
  ex.trace.append(built.c0, built.w0);
  ex.applied_mask.assign(1, false);

  RandomnessSource master(s.seed);
  bool reset_fired = false;

  for (std::int64_t k = 0; k < s.steps; ++k) {
    const TraceEntry& cur = ex.trace.entries.back();
    try {
      validate_against_registries(cur.ceta, agent);
      TickStreams streams = derive_tick_streams(master);
      Ceta proposed = agent.transition(cur.ceta, cur.world, streams.agent, agent.memory);
      WorldState next_w = built.world.transition(cur.ceta, cur.world, streams.world);
      if (built.concentration_enabled) {
        proposed = apply_concentration(cur.ceta, std::move(proposed), built.concentration,
                                       streams.meta);
      }
      bool applied_now = false;
      if (built.mindfulness.enabled && mask[static_cast<std::size_t>(k) + 1]) {
        proposed = apply_mindfulness(cur.ceta, std::move(proposed), built.mindfulness);
        applied_now = true;
      }
      if (s.reset.enabled && !reset_fired) {
        const auto stream = mind_state_stream(ex.trace);
        if (auto loop = detect_loop(stream)) {
          if (auto ev = nibbana_reset(ex.trace, *loop, ex.applied_mask, s.reset.cycles,
                                      s.reset.phi)) {
            if (ev->reset_offset <= k + 1) {
              ev->reset_offset = k + 1;  // never earlier than the tick being built
              proposed = reset_ceta(std::move(proposed));
              reset_fired = true;
              ex.reset = ev;
              ex.loop = loop;
            }
          }
        }
      }
      ex.trace.append(std::move(proposed), std::move(next_w));
      ex.applied_mask.push_back(applied_now);
    } catch (const RunError&) {
      throw;
    } catch (const Error& e) {
      throw RunError(cur.ceta.t, e.what());
    }
  }

  if (!ex.loop) ex.loop = detect_loop(mind_state_stream(ex.trace));
  ex.final_memory = agent.memory;
  return ex;
}

nlohmann::json build_report(const Scenario& s, const Execution& ex) {
  nlohmann::json report;
  report["scenario"] = s.id;
  report["seed"] = s.seed;
  report["steps"] = s.steps;

  const TickWindow window = s.metrics.window
                                ? TickWindow{s.metrics.window->first, s.metrics.window->second}
                                : full_window(ex.trace);
  const std::int64_t lo = std::max(window.first, ex.trace.t0);
  const std::int64_t hi = std::min(window.last, ex.trace.last_tick());
  const std::int64_t ticks = hi - lo + 1;
  LackOptions lack_opts;
  lack_opts.theta = s.agent.theta;

  nlohmann::json suffering;
  suffering["window"] = {window.first, window.last};
  suffering["pain"] = pain_metric(ex.trace, window);
  suffering["lackEvents"] = lack_event_count(ex.trace, window, lack_opts);
  if (ticks >= 2) {
    suffering["rigidity"] = rigidity_metric(ex.trace, window);
  } else {
    suffering["rigidity"] = nullptr;
  }
  report["suffering"] = suffering;

  const std::set<std::string> self_ids(s.metrics.self_concepts.begin(),
                                       s.metrics.self_concepts.end());
  report["selfing"] = selfing_score(ex.trace, window, self_ids);
  if (ticks >= 2) {
    const ThreeCharacteristics tc = three_characteristics(ex.trace, window, self_ids,
                                                          s.agent.theta);
    report["threeCharacteristics"] = {{"compoundness", tc.compoundness},
                                      {"fluctuation", tc.fluctuation},
                                      {"impersonality", tc.impersonality}};
  }

  if (ex.loop) {
    report["loop"] = {{"start", ex.trace.t0 + ex.loop->start}, {"period", ex.loop->period}};
  }
  if (ex.reset) {
    report["reset"] = {{"resetTick", ex.trace.t0 + ex.reset->reset_offset},
                       {"awareCycles", ex.reset->aware_cycles},
                       {"coverage", ex.reset->coverage}};
  }

  if (s.metrics.wholesomeness && !s.composition.enabled) {
    BuiltScenario built = build_scenario(s);
    nlohmann::json table = nlohmann::json::array();
    for (const auto& action : built.agent.action_registry) {
      const WholesomeResult r = wholesome_classify(
          action, built.c0, built.w0, built.agent, built.world, s.metrics.horizon,
          s.metrics.rollouts, RandomnessSource::mix(s.seed ^ 0x77C6ull), s.metrics.epsilon);
      table.push_back({{"action", action},
                       {"score", r.score},
                       {"class", wholesomeness_name(r.verdict)}});
    }
    report["wholesomeness"] = table;
  }

  if (s.memory.enabled) report["memory"] = ex.final_memory.to_json();
  return report;
}

int run_scenario_files(const std::filesystem::path& scenario_path, const RunOverrides& overrides,
                       std::filesystem::path out_dir, std::ostream& out, std::ostream& err) {
  Scenario s;
  try {
    s = parse_scenario(read_file(scenario_path), overrides.strict);
    if (overrides.seed) s.seed = *overrides.seed;
    if (overrides.steps) s.steps = *overrides.steps;
    validate_scenario(s);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    const Execution ex = execute_scenario(s);
    const nlohmann::json report = build_report(s, ex);

    std::filesystem::create_directories(out_dir);
    const std::string canonical = serialize_scenario(s);
    char run_id[17];
    std::snprintf(run_id, sizeof run_id, "%016llx",
                  static_cast<unsigned long long>(
                      RandomnessSource::mix(scenario_hash(canonical) ^ s.seed)));

    const auto trace_path = out_dir / "trace.csv";
    atomic_write(trace_path, trace_to_csv(ex.trace, s.metrics.tracked, s.agent.theta));
    std::vector<std::string> trace_files{"trace.csv"};
    if (ex.trace_b) {
      atomic_write(out_dir / "trace_b.csv", trace_to_csv(*ex.trace_b, {}, s.agent.theta));
      trace_files.push_back("trace_b.csv");
    }
    atomic_write(out_dir / "report.json", report.dump(2) + "\n");

    nlohmann::json meta;
    meta["runId"] = run_id;
    meta["scenarioId"] = s.id;
    meta["scenarioHash"] = scenario_hash_hex(s);
    meta["seed"] = s.seed;
    meta["steps"] = s.steps;
    meta["traces"] = trace_files;
    atomic_write(out_dir / "run.meta", meta.dump(2) + "\n");

    nlohmann::json summary;
    summary["scenario"] = s.id;
    summary["seed"] = s.seed;
    summary["steps"] = s.steps;
    summary["trace"] = trace_path.string();
    summary["report"] = (out_dir / "report.json").string();
    summary["exit"] = 0;
    out << summary.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
}

ReplayResult replay_verify(const std::filesystem::path& trace_path,
                           const std::filesystem::path& scenario_path) {
  const Scenario s = parse_scenario(read_file(scenario_path));
  const Trace recorded = trace_from_csv(read_file(trace_path));
  const Execution ex = execute_scenario(s);

  ReplayResult result;
  const std::size_t n = std::min(recorded.size(), ex.trace.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (!(recorded.entries[k] == ex.trace.entries[k])) {
      result.ok = false;
      result.mismatch_tick = ex.trace.t0 + static_cast<std::int64_t>(k);
      return result;
    }
  }
  if (recorded.size() != ex.trace.size()) {
    result.ok = false;
    result.mismatch_tick = ex.trace.t0 + static_cast<std::int64_t>(n);
  }
  return result;
}

std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag_value) {
  if (flag_value && !flag_value->empty()) return *flag_value;
  if (const char* env = std::getenv("CETANA_OUT"); env && *env) return env;
  return std::filesystem::current_path();
}

}  // namespace cetana
