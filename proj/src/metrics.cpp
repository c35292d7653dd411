#include "cetana/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace cetana {

namespace {

// Window clipped to the trace; EmptyWindowError when nothing remains.
std::pair<std::int64_t, std::int64_t> clip_window(const Trace& tr, TickWindow window,
                                                  std::int64_t min_ticks = 1) {
  const std::int64_t lo = std::max(window.first, tr.t0);
  const std::int64_t hi = std::min(window.last, tr.last_tick());
  if (tr.entries.empty() || lo > hi || (hi - lo + 1) < min_ticks) {
    throw EmptyWindowError("window [" + std::to_string(window.first) + ", " +
                           std::to_string(window.last) + "] has fewer than " +
                           std::to_string(min_ticks) + " ticks in the trace");
  }
  return {lo, hi};
}

}  // namespace

TickWindow full_window(const Trace& tr) {
  return TickWindow{tr.t0, tr.entries.empty() ? tr.t0 : tr.last_tick()};
}

double pain_metric(const Trace& tr, TickWindow window) {
  auto [lo, hi] = clip_window(tr, window);
  double sum = 0.0;
  for (std::int64_t t = lo; t <= hi; ++t) {
    sum += std::max(0, -numeric(tr.at_tick(t).ceta.mind.feeling));
  }
  return sum / static_cast<double>(hi - lo + 1);
}

double rigidity_metric(const Trace& tr, TickWindow window) {
  auto [lo, hi] = clip_window(tr, window, 2);
  std::map<std::string, std::int64_t> counts;
  std::set<std::string> menu;
  std::int64_t total = 0;
  for (std::int64_t t = lo; t <= hi; ++t) {
    const Action& a = tr.at_tick(t).ceta.action;
    menu.insert(a.menu.begin(), a.menu.end());
    for (const auto& id : a.selected) {
      ++counts[id];
      ++total;
    }
  }
  if (counts.size() <= 1 || menu.size() <= 1) return 1.0;
  double entropy = 0.0;
  for (const auto& [id, n] : counts) {
    const double p = static_cast<double>(n) / static_cast<double>(total);
    entropy -= p * std::log(p);
  }
  const double max_entropy = std::log(static_cast<double>(menu.size()));
  return 1.0 - std::min(1.0, entropy / max_entropy);
}

bool is_lack_tick(const Ceta& c, const LackOptions& opts) {
  return c.mind.present("mindfulness", opts.theta) &&
         c.mental.contains_quote_content("mind") &&
         c.mind.intensity("fear") >= opts.fear_threshold;
}

int lack_event_count(const Trace& tr, TickWindow window, const LackOptions& opts) {
  if (tr.entries.empty()) return 0;
  const std::int64_t lo = std::max(window.first, tr.t0);
  const std::int64_t hi = std::min(window.last, tr.last_tick());
  int episodes = 0;
  bool in_episode = false;
  for (std::int64_t t = lo; t <= hi; ++t) {
    const bool lack = is_lack_tick(tr.at_tick(t).ceta, opts);
    if (lack && !in_episode) ++episodes;
    in_episode = lack;
  }
  return episodes;
}

double selfing_score(const Trace& tr, TickWindow window, const std::set<std::string>& self_ids) {
  if (tr.entries.empty() || self_ids.empty()) return 0.0;
  const std::int64_t lo = std::max(window.first, tr.t0);
  const std::int64_t hi = std::min(window.last, tr.last_tick());
  if (lo > hi) return 0.0;
  std::int64_t hits = 0;
  for (std::int64_t t = lo; t <= hi; ++t) {
    for (const auto& o : tr.at_tick(t).ceta.mental.objects) {
      if (o.kind == MentalObjectKind::Concept && self_ids.count(o.id)) ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(hi - lo + 1);
}

namespace {

int non_default_groups(const Ceta& c, double theta) {
  int n = 0;
  const bool body = !c.body.focus.empty() ||
                    std::any_of(c.body.pixels.begin(), c.body.pixels.end(),
                                [](int v) { return v != 0; });
  if (body) ++n;
  if (!c.mental.objects.empty()) ++n;
  if (c.mind.feeling != FeelingTone::Neutral) ++n;
  if (std::any_of(c.mind.factors.begin(), c.mind.factors.end(),
                  [theta](const auto& kv) { return kv.second >= theta; })) {
    ++n;
  }
  if (!c.action.selected.empty()) ++n;
  return n;
}

// Coordinate changes between consecutive mind-states: one per factor whose
// intensity moved, plus one when the feeling tone moved.
int mind_state_changes(const MindState& a, const MindState& b) {
  int changes = a.feeling != b.feeling ? 1 : 0;
  std::set<std::string> names;
  for (const auto& [k, v] : a.factors) names.insert(k);
  for (const auto& [k, v] : b.factors) names.insert(k);
  for (const auto& name : names) {
    if (a.intensity(name) != b.intensity(name)) ++changes;
  }
  return changes;
}

}  // namespace

ThreeCharacteristics three_characteristics(const Trace& tr, TickWindow window,
                                           const std::set<std::string>& self_ids, double theta) {
  auto [lo, hi] = clip_window(tr, window, 2);
  ThreeCharacteristics out;
  double compound = 0.0;
  for (std::int64_t t = lo; t <= hi; ++t) {
    compound += non_default_groups(tr.at_tick(t).ceta, theta);
  }
  out.compoundness = compound / static_cast<double>(hi - lo + 1);

  double changes = 0.0;
  for (std::int64_t t = lo; t < hi; ++t) {
    changes += mind_state_changes(tr.at_tick(t).ceta.mind, tr.at_tick(t + 1).ceta.mind);
  }
  out.fluctuation = changes / static_cast<double>(hi - lo);

  out.impersonality = std::clamp(1.0 - selfing_score(tr, window, self_ids), 0.0, 1.0);
  return out;
}

const char* wholesomeness_name(Wholesomeness w) {
  switch (w) {
    case Wholesomeness::Wholesome: return "wholesome";
    case Wholesomeness::Unwholesome: return "unwholesome";
    case Wholesomeness::Neutral: return "neutral";
  }
  return "?";
}

namespace {

// One rollout: the agent takes its own step from (c, w); on the forced arm
// the selection of that first stepped ceta is overridden. Pain is averaged
// over the `horizon` ticks that follow the decision tick. Both arms use the
// same seed, so they share every draw (common random numbers).
double rollout_pain(const std::string* forced_action, const Ceta& c, const WorldState& w,
                    const AgentSpec& agent, const WorldSpec& world, int horizon,
                    std::uint64_t seed) {
  AgentSpec a = agent;
  RandomnessSource master(seed);
  Ceta cur = c;
  WorldState cur_w = w;
  double pain_sum = 0.0;
  for (int k = 0; k <= horizon; ++k) {
    TickStreams streams = derive_tick_streams(master);
    Ceta next = a.transition(cur, cur_w, streams.agent, a.memory);
    WorldState next_w = world.transition(cur, cur_w, streams.world);
    if (k == 0 && forced_action) next.action.selected = {*forced_action};
    if (k >= 1) pain_sum += std::max(0, -numeric(next.mind.feeling));
    cur = std::move(next);
    cur_w = std::move(next_w);
  }
  return pain_sum / static_cast<double>(horizon);
}

}  // namespace

WholesomeResult wholesome_classify(const std::string& action_id, const Ceta& c,
                                   const WorldState& w, const AgentSpec& agent,
                                   const WorldSpec& world, int horizon, int n_rollouts,
                                   std::uint64_t base_seed, double epsilon, ExecPolicy policy) {
  if (horizon < 1) throw OutOfRangeError("horizon must be >= 1");
  if (n_rollouts < 1) throw OutOfRangeError("rollout count must be >= 1");
  if (!c.action.menu.count(action_id)) {
    throw RegistryMismatchError("action '" + action_id + "' not in menu");
  }

  auto forced_pain = map_indexed<double>(
      static_cast<std::size_t>(n_rollouts), policy, [&](std::size_t i) {
        return rollout_pain(&action_id, c, w, agent, world, horizon, base_seed + i);
      });
  auto baseline_pain = map_indexed<double>(
      static_cast<std::size_t>(n_rollouts), policy, [&](std::size_t i) {
        return rollout_pain(nullptr, c, w, agent, world, horizon, base_seed + i);
      });

  WholesomeResult out;
  out.score = mean_ordered(forced_pain) - mean_ordered(baseline_pain);
  if (out.score > epsilon) {
    out.verdict = Wholesomeness::Unwholesome;
  } else if (out.score < -epsilon) {
    out.verdict = Wholesomeness::Wholesome;
  } else {
    out.verdict = Wholesomeness::Neutral;
  }
  return out;
}

SufferingReport suffering_report(const Trace& tr, TickWindow window, const LackOptions& opts) {
  SufferingReport r;
  r.window = window;
  r.pain = pain_metric(tr, window);
  r.rigidity = rigidity_metric(tr, window);
  r.lack_events = lack_event_count(tr, window, opts);
  return r;
}

nlohmann::json to_json(const SufferingReport& r) {
  nlohmann::json j;
  j["pain"] = r.pain;
  j["rigidity"] = r.rigidity;
  j["lackEvents"] = r.lack_events;
  j["window"] = {r.window.first, r.window.last};
  return j;
}

}  // namespace cetana
