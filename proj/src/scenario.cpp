#include "cetana/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cetana {

namespace {

const char* kind_label(ScenarioErrorKind k) {
  switch (k) {
    case ScenarioErrorKind::Syntax: return "syntax error";
    case ScenarioErrorKind::UnknownKey: return "unknown key";
    case ScenarioErrorKind::DuplicateKey: return "duplicate key";
    case ScenarioErrorKind::MissingRequired: return "missing required key";
    case ScenarioErrorKind::Range: return "value out of range";
  }
  return "error";
}

std::string format_msg(ScenarioErrorKind kind, int line, int col, const std::string& msg) {
  std::ostringstream os;
  os << "scenario:" << line << ":" << col << ": " << kind_label(kind) << ": " << msg;
  return os.str();
}

}  // namespace

ScenarioParseError::ScenarioParseError(ScenarioErrorKind kind, int line, int col,
                                       const std::string& msg)
    : Error(format_msg(kind, line, col, msg)), kind_(kind), line_(line), col_(col) {}

const std::set<std::string>& default_factor_registry() {
  static const std::set<std::string> s{"anger",     "desire",       "aversion",
                                       "mindfulness", "friendliness", "compassion",
                                       "equanimity",  "fear",         "wrongView"};
  return s;
}

std::set<std::string> Scenario::factor_registry() const {
  std::set<std::string> reg = default_factor_registry();
  reg.insert(agent.extra_factors.begin(), agent.extra_factors.end());
  return reg;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(value);
  while (std::getline(ss, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

struct RawValue {
  std::string text;
  int line = 0;
};

using SectionMap = std::map<std::string, RawValue>;

struct RawScenario {
  std::map<std::string, SectionMap> sections;
};

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> k{
      {"scenario", {"id", "seed", "steps", "t0"}},
      {"world",
       {"kind", "actions", "cuePeriod", "cueReward", "width", "height", "alive"}},
      {"agent",
       {"policy", "pixels", "attention", "actionAttention", "factors", "theta", "angerGain",
        "angerDecay", "factorDecay", "fearDecay", "fearOnExposure", "selfRate", "policyBase",
        "policyGain", "cycleFeelings"}},
      {"memory", {"enabled", "capacity", "reliability", "activation"}},
      {"mindfulness",
       {"enabled", "sharpness", "strength", "right", "rho", "equanimityFloor", "quoteFocus",
        "unwholesome"}},
      {"concentration",
       {"enabled", "startTick", "driftRate", "recovery", "pixels", "focus", "action"}},
      {"reset", {"enabled", "cycles", "phi"}},
      {"metrics",
       {"window", "tracked", "selfConcepts", "wholesomeness", "horizon", "rollouts", "epsilon"}},
      {"composition", {"enabled", "policyB", "seedB"}},
  };
  return k;
}

bool key_allowed(const std::string& section, const std::string& key) {
  if (section == "world" && key.rfind("reward.", 0) == 0) return key.size() > 7;
  if (section == "agent" && key.rfind("init.", 0) == 0) return key.size() > 5;
  const auto& keys = known_keys().at(section);
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

RawScenario collect(const std::string& text, bool strict) {
  RawScenario raw;
  std::istringstream ss(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ScenarioParseError(ScenarioErrorKind::Syntax, line_no,
                                 static_cast<int>(line.size()), "section header missing ']'");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(section)) {
        throw ScenarioParseError(ScenarioErrorKind::UnknownKey, line_no, 1,
                                 "unknown section [" + section + "]");
      }
      raw.sections[section];  // a section may be present and empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ScenarioParseError(ScenarioErrorKind::Syntax, line_no, 1,
                               "expected 'key = value': '" + line + "'");
    }
    if (section.empty()) {
      throw ScenarioParseError(ScenarioErrorKind::Syntax, line_no, 1,
                               "key outside any [section]");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ScenarioParseError(ScenarioErrorKind::Syntax, line_no, 1, "empty key");
    }
    if (!key_allowed(section, key)) {
      if (strict) {
        throw ScenarioParseError(ScenarioErrorKind::UnknownKey, line_no, 1,
                                 "'" + key + "' in [" + section + "]");
      }
      continue;
    }
    auto& sec = raw.sections[section];
    if (sec.count(key)) {
      throw ScenarioParseError(ScenarioErrorKind::DuplicateKey, line_no, 1,
                               "'" + key + "' repeats in [" + section + "] (line " +
                                   std::to_string(line_no) + ")");
    }
    sec[key] = RawValue{value, line_no};
  }
  return raw;
}

// Typed readers over one section.
class Reader {
public:
  Reader(const RawScenario& raw, const std::string& section) : section_(section) {
    auto it = raw.sections.find(section);
    if (it != raw.sections.end()) map_ = &it->second;
  }

  bool has(const std::string& key) const { return map_ && map_->count(key); }

  const RawValue& at(const std::string& key) const { return map_->at(key); }

  const SectionMap* entries() const { return map_; }

  std::string str(const std::string& key, const std::string& def) const {
    return has(key) ? at(key).text : def;
  }

  bool boolean(const std::string& key, bool def) const {
    if (!has(key)) return def;
    const auto& rv = at(key);
    if (rv.text == "true") return true;
    if (rv.text == "false") return false;
    throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                             key + " expects true/false, got '" + rv.text + "'");
  }

  std::int64_t integer(const std::string& key, std::int64_t def) const {
    if (!has(key)) return def;
    return to_int(at(key), key);
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t def) const {
    if (!has(key)) return def;
    const auto& rv = at(key);
    const std::int64_t v = to_int(rv, key);
    if (v < 0) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1, key + " must be >= 0");
    }
    return static_cast<std::uint64_t>(v);
  }

  double real(const std::string& key, double def, double lo, double hi) const {
    if (!has(key)) return def;
    const auto& rv = at(key);
    double v = 0.0;
    try {
      v = parse_double(rv.text);
    } catch (const Error&) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                               key + " expects a number, got '" + rv.text + "'");
    }
    if (v < lo || v > hi) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                               key + " = " + rv.text + " outside [" + format_double(lo) + ", " +
                                   format_double(hi) + "]");
    }
    return v;
  }

  std::vector<std::string> list(const std::string& key,
                                const std::vector<std::string>& def) const {
    if (!has(key)) return def;
    return split_list(at(key).text);
  }

  std::int64_t to_int(const RawValue& rv, const std::string& key) const {
    try {
      std::size_t pos = 0;
      const std::int64_t v = std::stoll(rv.text, &pos);
      if (pos != rv.text.size()) throw std::invalid_argument(rv.text);
      return v;
    } catch (const std::exception&) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                               key + " expects an integer, got '" + rv.text + "'");
    }
  }

private:
  const std::string section_;
  const SectionMap* map_ = nullptr;
};

int feeling_int(const std::string& tok, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size() || v < -2 || v > 2) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ScenarioParseError(ScenarioErrorKind::Range, line, 1,
                             key + ": feeling '" + tok + "' must be an integer in [-2, 2]");
  }
}

std::vector<BanditOutcome> parse_outcomes(const RawValue& rv, const std::string& key) {
  std::vector<BanditOutcome> outcomes;
  for (const auto& entry : split_list(rv.text)) {
    const auto at = entry.find('@');
    if (at == std::string::npos) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                               key + ": expected '<feeling> @ <prob>', got '" + entry + "'");
    }
    const int f = feeling_int(trim(entry.substr(0, at)), rv.line, key);
    double p = 0.0;
    try {
      p = parse_double(trim(entry.substr(at + 1)));
    } catch (const Error&) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                               key + ": bad probability in '" + entry + "'");
    }
    if (p < 0.0 || p > 1.0) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                               key + ": probability outside [0, 1]");
    }
    outcomes.push_back(BanditOutcome{static_cast<FeelingTone>(f), p});
  }
  double sum = 0.0;
  for (const auto& o : outcomes) sum += o.prob;
  if (outcomes.empty() || std::abs(sum - 1.0) > 1e-9) {
    throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                             key + ": outcome probabilities must sum to 1");
  }
  return outcomes;
}

void require(const Reader& r, const std::string& section, const std::string& key) {
  if (!r.has(key)) {
    throw ScenarioParseError(ScenarioErrorKind::MissingRequired, 0, 0,
                             "[" + section + "] " + key);
  }
}

void check_policy(const std::string& policy, const std::vector<std::string>& actions,
                  const std::string& key) {
  if (policy == "uniform" || policy == "echo") return;
  for (const char* prefix : {"fixed:", "angerBias:"}) {
    if (policy.rfind(prefix, 0) == 0) {
      const std::string id = policy.substr(std::string(prefix).size());
      if (std::find(actions.begin(), actions.end(), id) == actions.end()) {
        throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                                 key + " references undeclared action '" + id + "'");
      }
      return;
    }
  }
  throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                           key + " '" + policy + "' is not a known policy");
}

Scenario parse_impl(const std::string& text, bool strict) {
  const RawScenario raw = collect(text, strict);
  Scenario s;

  Reader scn(raw, "scenario");
  require(scn, "scenario", "seed");
  require(scn, "scenario", "steps");
  s.id = scn.str("id", "unnamed");
  s.seed = scn.unsigned_integer("seed", 1);
  s.steps = scn.integer("steps", 10);
  if (s.steps < 0) {
    throw ScenarioParseError(ScenarioErrorKind::Range, scn.at("steps").line, 1,
                             "steps must be >= 0");
  }
  s.t0 = scn.integer("t0", 0);

  Reader world(raw, "world");
  require(world, "world", "kind");
  s.world.kind = world.str("kind", "rewardBandit");
  if (s.world.kind != "rewardBandit" && s.world.kind != "grid") {
    throw ScenarioParseError(ScenarioErrorKind::Range, world.at("kind").line, 1,
                             "world kind must be rewardBandit or grid");
  }
  s.world.actions = world.list("actions", {"a1", "a2"});
  if (s.world.actions.empty()) {
    throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0, "actions must be nonempty");
  }
  s.world.cue_period = world.integer("cuePeriod", 0);
  if (s.world.cue_period < 0) {
    throw ScenarioParseError(ScenarioErrorKind::Range, world.at("cuePeriod").line, 1,
                             "cuePeriod must be >= 0");
  }
  s.world.cue_reward =
      feeling_int(world.str("cueReward", "0"),
                  world.has("cueReward") ? world.at("cueReward").line : 0, "cueReward");
  s.world.width = world.integer("width", 8);
  s.world.height = world.integer("height", 8);
  if (s.world.width < 1 || s.world.height < 1) {
    throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0, "grid must be at least 1x1");
  }
  if (world.entries()) {
    for (const auto& [key, rv] : *world.entries()) {
      if (key.rfind("reward.", 0) != 0) continue;
      const std::string id = key.substr(7);
      if (std::find(s.world.actions.begin(), s.world.actions.end(), id) ==
          s.world.actions.end()) {
        throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                                 "reward for undeclared action '" + id + "'");
      }
      s.world.rewards[id] = parse_outcomes(rv, key);
    }
  }
  if (world.has("alive")) {
    for (const auto& tok : split_list(world.at("alive").text)) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        throw ScenarioParseError(ScenarioErrorKind::Range, world.at("alive").line, 1,
                                 "alive entries are x:y pairs, got '" + tok + "'");
      }
      try {
        s.world.alive.emplace_back(std::stoll(tok.substr(0, colon)),
                                   std::stoll(tok.substr(colon + 1)));
      } catch (const std::exception&) {
        throw ScenarioParseError(ScenarioErrorKind::Range, world.at("alive").line, 1,
                                 "bad coordinate '" + tok + "'");
      }
    }
  }

  Reader agent(raw, "agent");
  s.agent.policy = agent.str("policy", "uniform");
  check_policy(s.agent.policy, s.world.actions, "policy");
  s.agent.pixels = static_cast<std::size_t>(agent.unsigned_integer("pixels", 4));
  s.agent.attention = static_cast<std::size_t>(agent.unsigned_integer("attention", 4));
  s.agent.action_attention =
      static_cast<std::size_t>(agent.unsigned_integer("actionAttention", 1));
  if (s.agent.attention < 1 || s.agent.action_attention < 1) {
    throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                             "attention capacities must be >= 1");
  }
  s.agent.extra_factors = agent.list("factors", {});
  s.agent.theta = agent.real("theta", kPresenceTheta, 0.0, 1.0);
  s.agent.anger_gain = agent.real("angerGain", 0.0, 0.0, 1.0);
  s.agent.anger_decay = agent.real("angerDecay", 0.1, 0.0, 1.0);
  s.agent.factor_decay = agent.real("factorDecay", 0.0, 0.0, 1.0);
  s.agent.fear_decay = agent.real("fearDecay", 0.1, 0.0, 1.0);
  s.agent.fear_on_exposure = agent.real("fearOnExposure", 0.0, 0.0, 1.0);
  s.agent.self_rate = agent.real("selfRate", 0.0, 0.0, 1.0);
  s.agent.policy_base = agent.real("policyBase", 0.15, 0.0, 1.0);
  s.agent.policy_gain = agent.real("policyGain", 0.8, 0.0, 1.0);
  if (agent.has("cycleFeelings")) {
    for (const auto& tok : split_list(agent.at("cycleFeelings").text)) {
      s.agent.cycle_feelings.push_back(
          feeling_int(tok, agent.at("cycleFeelings").line, "cycleFeelings"));
    }
  }
  const std::set<std::string> registry = [&] {
    std::set<std::string> reg = default_factor_registry();
    reg.insert(s.agent.extra_factors.begin(), s.agent.extra_factors.end());
    return reg;
  }();
  if (agent.entries()) {
    for (const auto& [key, rv] : *agent.entries()) {
      if (key.rfind("init.", 0) != 0) continue;
      const std::string name = key.substr(5);
      if (!registry.count(name)) {
        throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                                 "init for factor '" + name + "' outside the registry");
      }
      double v = 0.0;
      try {
        v = parse_double(rv.text);
      } catch (const Error&) {
        throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                                 key + " expects a number");
      }
      if (v < 0.0 || v > 1.0) {
        throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                                 key + " outside [0, 1]");
      }
      s.agent.init[name] = v;
    }
  }

  Reader memory(raw, "memory");
  s.memory.enabled = memory.boolean("enabled", false);
  s.memory.capacity = static_cast<std::size_t>(memory.unsigned_integer("capacity", 16));
  s.memory.reliability = memory.real("reliability", 1.0, 0.0, 1.0);
  s.memory.activation = static_cast<int>(memory.integer("activation", 3));
  if (s.memory.activation < 1) {
    throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0, "activation must be >= 1");
  }

  Reader mf(raw, "mindfulness");
  s.mindfulness.enabled = mf.boolean("enabled", false);
  s.mindfulness.sharpness = mf.unsigned_integer("sharpness", 1);
  if (s.mindfulness.sharpness < 1) {
    throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0, "sharpness must be >= 1");
  }
  if (mf.has("strength") && mf.at("strength").text != "inf") {
    s.mindfulness.strength = mf.unsigned_integer("strength", 0);
  }
  s.mindfulness.right = mf.boolean("right", false);
  s.mindfulness.rho = mf.real("rho", 0.5, 0.0, 1.0);
  s.mindfulness.equanimity_floor = mf.real("equanimityFloor", 0.5, 0.0, 1.0);
  s.mindfulness.quote_focus = mf.boolean("quoteFocus", false);
  s.mindfulness.unwholesome =
      mf.list("unwholesome", {"anger", "aversion", "desire", "fear"});
  for (const auto& name : s.mindfulness.unwholesome) {
    if (!registry.count(name)) {
      throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                               "unwholesome factor '" + name + "' outside the registry");
    }
  }

  Reader conc(raw, "concentration");
  s.concentration.enabled = conc.boolean("enabled", false);
  s.concentration.start_tick = conc.integer("startTick", 0);
  s.concentration.drift_rate = conc.real("driftRate", 0.0, 0.0, 1.0);
  s.concentration.recovery = conc.boolean("recovery", true);
  if (conc.has("pixels")) {
    std::vector<int> px;
    for (const auto& tok : split_list(conc.at("pixels").text)) {
      try {
        px.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ScenarioParseError(ScenarioErrorKind::Range, conc.at("pixels").line, 1,
                                 "bad pixel value '" + tok + "'");
      }
    }
    s.concentration.pixels = std::move(px);
  }
  if (conc.has("focus")) {
    std::set<std::size_t> f;
    for (const auto& tok : split_list(conc.at("focus").text)) {
      try {
        const long long v = std::stoll(tok);
        if (v < 0) throw std::invalid_argument(tok);
        f.insert(static_cast<std::size_t>(v));
      } catch (const std::exception&) {
        throw ScenarioParseError(ScenarioErrorKind::Range, conc.at("focus").line, 1,
                                 "bad focus index '" + tok + "'");
      }
    }
    s.concentration.focus = std::move(f);
  }
  for (const auto& a : conc.list("action", {})) {
    if (std::find(s.world.actions.begin(), s.world.actions.end(), a) ==
        s.world.actions.end()) {
      throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                               "clamp action '" + a + "' not declared");
    }
    s.concentration.action.insert(a);
  }
  const std::size_t clamp_len =
      s.concentration.pixels ? s.concentration.pixels->size() : s.agent.pixels;
  if (s.concentration.focus) {
    for (auto idx : *s.concentration.focus) {
      if (idx >= clamp_len) {
        throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                                 "clamp focus index " + std::to_string(idx) +
                                     " outside the pixel range");
      }
    }
    if (s.concentration.focus->size() > s.agent.attention) {
      throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                               "clamp focus exceeds the attention capacity");
    }
  }
  if (s.concentration.action.size() > s.agent.action_attention) {
    throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                             "clamp action set exceeds the action attention capacity");
  }

  Reader reset(raw, "reset");
  s.reset.enabled = reset.boolean("enabled", false);
  s.reset.cycles = static_cast<int>(reset.integer("cycles", 2));
  if (s.reset.cycles < 1) {
    throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0, "reset cycles must be >= 1");
  }
  s.reset.phi = reset.real("phi", 0.8, 0.0, 1.0);

  Reader metrics(raw, "metrics");
  if (metrics.has("window")) {
    const auto& rv = metrics.at("window");
    const auto dots = rv.text.find("..");
    if (dots == std::string::npos) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                               "window expects 'a..b', got '" + rv.text + "'");
    }
    try {
      s.metrics.window = {std::stoll(trim(rv.text.substr(0, dots))),
                          std::stoll(trim(rv.text.substr(dots + 2)))};
    } catch (const std::exception&) {
      throw ScenarioParseError(ScenarioErrorKind::Range, rv.line, 1,
                               "bad window '" + rv.text + "'");
    }
  }
  if (metrics.has("tracked")) {
    s.metrics.tracked = static_cast<int>(metrics.integer("tracked", 0));
  }
  s.metrics.self_concepts = metrics.list("selfConcepts", {});
  s.metrics.wholesomeness = metrics.boolean("wholesomeness", false);
  s.metrics.horizon = static_cast<int>(metrics.integer("horizon", 3));
  s.metrics.rollouts = static_cast<int>(metrics.integer("rollouts", 200));
  if (s.metrics.horizon < 1 || s.metrics.rollouts < 1) {
    throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                             "horizon and rollouts must be >= 1");
  }
  s.metrics.epsilon = metrics.real("epsilon", 0.05, 0.0, 2.0);

  Reader comp(raw, "composition");
  s.composition.enabled = comp.boolean("enabled", false);
  s.composition.policy_b = comp.str("policyB", "echo");
  check_policy(s.composition.policy_b, s.world.actions, "policyB");
  s.composition.seed_b = comp.unsigned_integer("seedB", 0);

  return s;
}

void emit(std::ostringstream& os, const std::string& key, const std::string& value) {
  os << key << " = " << value << "\n";
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

template <class Range, class Fn>
std::string join_fmt(const Range& items, Fn fmt) {
  std::string out;
  bool first = true;
  for (const auto& v : items) {
    if (!first) out += ", ";
    out += fmt(v);
    first = false;
  }
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text, bool strict) {
  Scenario s = parse_impl(text, strict);
  validate_scenario(s);
  return s;
}

void validate_scenario(const Scenario& s) {
  if (s.metrics.window) {
    const auto [a, b] = *s.metrics.window;
    if (a > b || b < s.t0 || a > s.t0 + s.steps) {
      throw ScenarioParseError(ScenarioErrorKind::Range, 0, 0,
                               "metrics window " + std::to_string(a) + ".." + std::to_string(b) +
                                   " misses the run range");
    }
  }
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "[scenario]\n";
  emit(os, "id", s.id);
  emit(os, "seed", std::to_string(s.seed));
  emit(os, "steps", std::to_string(s.steps));
  emit(os, "t0", std::to_string(s.t0));

  os << "\n[world]\n";
  emit(os, "kind", s.world.kind);
  emit(os, "actions", join(s.world.actions));
  for (const auto& [id, outcomes] : s.world.rewards) {
    emit(os, "reward." + id, join_fmt(outcomes, [](const BanditOutcome& o) {
           return std::to_string(numeric(o.feeling)) + " @ " + format_double(o.prob);
         }));
  }
  emit(os, "cuePeriod", std::to_string(s.world.cue_period));
  emit(os, "cueReward", std::to_string(s.world.cue_reward));
  emit(os, "width", std::to_string(s.world.width));
  emit(os, "height", std::to_string(s.world.height));
  emit(os, "alive", join_fmt(s.world.alive, [](const auto& xy) {
         return std::to_string(xy.first) + ":" + std::to_string(xy.second);
       }));

  os << "\n[agent]\n";
  emit(os, "policy", s.agent.policy);
  emit(os, "pixels", std::to_string(s.agent.pixels));
  emit(os, "attention", std::to_string(s.agent.attention));
  emit(os, "actionAttention", std::to_string(s.agent.action_attention));
  emit(os, "factors", join(s.agent.extra_factors));
  for (const auto& [name, v] : s.agent.init) emit(os, "init." + name, format_double(v));
  emit(os, "theta", format_double(s.agent.theta));
  emit(os, "angerGain", format_double(s.agent.anger_gain));
  emit(os, "angerDecay", format_double(s.agent.anger_decay));
  emit(os, "factorDecay", format_double(s.agent.factor_decay));
  emit(os, "fearDecay", format_double(s.agent.fear_decay));
  emit(os, "fearOnExposure", format_double(s.agent.fear_on_exposure));
  emit(os, "selfRate", format_double(s.agent.self_rate));
  emit(os, "policyBase", format_double(s.agent.policy_base));
  emit(os, "policyGain", format_double(s.agent.policy_gain));
  emit(os, "cycleFeelings",
       join_fmt(s.agent.cycle_feelings, [](int v) { return std::to_string(v); }));

  os << "\n[memory]\n";
  emit(os, "enabled", s.memory.enabled ? "true" : "false");
  emit(os, "capacity", std::to_string(s.memory.capacity));
  emit(os, "reliability", format_double(s.memory.reliability));
  emit(os, "activation", std::to_string(s.memory.activation));

  os << "\n[mindfulness]\n";
  emit(os, "enabled", s.mindfulness.enabled ? "true" : "false");
  emit(os, "sharpness", std::to_string(s.mindfulness.sharpness));
  emit(os, "strength",
       s.mindfulness.strength == std::numeric_limits<std::uint64_t>::max()
           ? "inf"
           : std::to_string(s.mindfulness.strength));
  emit(os, "right", s.mindfulness.right ? "true" : "false");
  emit(os, "rho", format_double(s.mindfulness.rho));
  emit(os, "equanimityFloor", format_double(s.mindfulness.equanimity_floor));
  emit(os, "quoteFocus", s.mindfulness.quote_focus ? "true" : "false");
  emit(os, "unwholesome", join(s.mindfulness.unwholesome));

  os << "\n[concentration]\n";
  emit(os, "enabled", s.concentration.enabled ? "true" : "false");
  emit(os, "startTick", std::to_string(s.concentration.start_tick));
  emit(os, "driftRate", format_double(s.concentration.drift_rate));
  emit(os, "recovery", s.concentration.recovery ? "true" : "false");
  if (s.concentration.pixels) {
    emit(os, "pixels",
         join_fmt(*s.concentration.pixels, [](int v) { return std::to_string(v); }));
  }
  if (s.concentration.focus) {
    emit(os, "focus", join_fmt(*s.concentration.focus,
                               [](std::size_t v) { return std::to_string(v); }));
  }
  emit(os, "action", join_fmt(s.concentration.action, [](const std::string& a) { return a; }));

  os << "\n[reset]\n";
  emit(os, "enabled", s.reset.enabled ? "true" : "false");
  emit(os, "cycles", std::to_string(s.reset.cycles));
  emit(os, "phi", format_double(s.reset.phi));

  os << "\n[metrics]\n";
  if (s.metrics.window) {
    emit(os, "window",
         std::to_string(s.metrics.window->first) + ".." + std::to_string(s.metrics.window->second));
  }
  if (s.metrics.tracked) emit(os, "tracked", std::to_string(*s.metrics.tracked));
  emit(os, "selfConcepts", join(s.metrics.self_concepts));
  emit(os, "wholesomeness", s.metrics.wholesomeness ? "true" : "false");
  emit(os, "horizon", std::to_string(s.metrics.horizon));
  emit(os, "rollouts", std::to_string(s.metrics.rollouts));
  emit(os, "epsilon", format_double(s.metrics.epsilon));

  os << "\n[composition]\n";
  emit(os, "enabled", s.composition.enabled ? "true" : "false");
  emit(os, "policyB", s.composition.policy_b);
  emit(os, "seedB", std::to_string(s.composition.seed_b));

  return os.str();
}

std::uint64_t scenario_hash(const std::string& canonical_text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string scenario_hash_hex(const Scenario& s) {
  const std::uint64_t h = scenario_hash(serialize_scenario(s));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace cetana
