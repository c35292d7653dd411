#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cetana/contemplative.hpp"
#include "cetana/core.hpp"
#include "cetana/dynamics.hpp"
#include "cetana/mindfulness.hpp"

namespace cetana {

enum class ScenarioErrorKind { Syntax, UnknownKey, DuplicateKey, MissingRequired, Range };

class ScenarioParseError : public Error {
public:
  ScenarioParseError(ScenarioErrorKind kind, int line, int col, const std::string& msg);
  ScenarioErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int col() const { return col_; }

private:
  ScenarioErrorKind kind_;
  int line_;
  int col_;
};

struct ScenarioWorld {
  std::string kind = "rewardBandit";
  // bandit
  std::vector<std::string> actions{"a1", "a2"};
  std::map<std::string, std::vector<BanditOutcome>> rewards;
  std::int64_t cue_period = 0;
  int cue_reward = 0;
  // grid
  std::int64_t width = 8;
  std::int64_t height = 8;
  std::vector<std::pair<std::int64_t, std::int64_t>> alive;

  bool operator==(const ScenarioWorld&) const = default;
};

struct ScenarioAgent {
  std::string policy = "uniform";  // uniform | fixed:<id> | angerBias:<id> | echo
  std::size_t pixels = 4;
  std::size_t attention = 4;
  std::size_t action_attention = 1;
  std::vector<std::string> extra_factors;
  std::map<std::string, double> init;  // initial factor intensities
  double theta = kPresenceTheta;
  double anger_gain = 0.0;
  double anger_decay = 0.1;
  double factor_decay = 0.0;
  double fear_decay = 0.1;
  double fear_on_exposure = 0.0;
  double self_rate = 0.0;
  double policy_base = 0.15;  // angerBias: unconditional pull toward the action
  double policy_gain = 0.8;   // angerBias: pull per unit anger
  std::vector<int> cycle_feelings;  // nonempty: feeling follows this cycle

  bool operator==(const ScenarioAgent&) const = default;
};

struct ScenarioMemory {
  bool enabled = false;
  std::size_t capacity = 16;
  double reliability = 1.0;
  int activation = 3;

  bool operator==(const ScenarioMemory&) const = default;
};

struct ScenarioMindfulness {
  bool enabled = false;
  std::uint64_t sharpness = 1;
  std::uint64_t strength = std::numeric_limits<std::uint64_t>::max();
  bool right = false;
  double rho = 0.5;
  double equanimity_floor = 0.5;
  bool quote_focus = false;
  std::vector<std::string> unwholesome{"anger", "aversion", "desire", "fear"};

  bool operator==(const ScenarioMindfulness&) const = default;
};

struct ScenarioConcentration {
  bool enabled = false;
  std::int64_t start_tick = 0;
  double drift_rate = 0.0;
  bool recovery = true;
  std::optional<std::vector<int>> pixels;        // default: zeros across agent pixels
  std::optional<std::set<std::size_t>> focus;    // default: {0} when pixels exist
  std::set<std::string> action;

  bool operator==(const ScenarioConcentration&) const = default;
};

struct ScenarioReset {
  bool enabled = false;
  int cycles = 2;   // consecutive aware cycles before the reset
  double phi = 0.8;

  bool operator==(const ScenarioReset&) const = default;
};

struct ScenarioMetrics {
  std::optional<std::pair<std::int64_t, std::int64_t>> window;
  std::optional<int> tracked;  // body object id for the layer column
  std::vector<std::string> self_concepts;
  bool wholesomeness = false;
  int horizon = 3;
  int rollouts = 200;
  double epsilon = 0.05;

  bool operator==(const ScenarioMetrics&) const = default;
};

struct ScenarioComposition {
  bool enabled = false;
  std::string policy_b = "echo";
  std::uint64_t seed_b = 0;  // 0: derive as seed + 1

  bool operator==(const ScenarioComposition&) const = default;
};

// Sectioned key-value scenario. parse_scenario(serialize_scenario(s)) == s.
struct Scenario {
  std::string id;
  std::uint64_t seed = 1;
  std::int64_t steps = 10;
  std::int64_t t0 = 0;
  ScenarioWorld world;
  ScenarioAgent agent;
  ScenarioMemory memory;
  ScenarioMindfulness mindfulness;
  ScenarioConcentration concentration;
  ScenarioReset reset;
  ScenarioMetrics metrics;
  ScenarioComposition composition;

  std::set<std::string> factor_registry() const;  // defaults plus extras

  bool operator==(const Scenario&) const = default;
};

const std::set<std::string>& default_factor_registry();

// Strict parser: unknown or duplicate keys are diagnostics, values are
// range-checked, required keys enforced. strict = false downgrades unknown
// keys to silence; everything else still diagnoses.
Scenario parse_scenario(const std::string& text, bool strict = true);

// Cross-field checks (metrics window inside the run range). Re-run after
// applying CLI overrides. Throws ScenarioParseError.
void validate_scenario(const Scenario& s);

// Canonical text form: fixed section and key order, every key explicit.
std::string serialize_scenario(const Scenario& s);

std::uint64_t scenario_hash(const std::string& canonical_text);  // FNV-1a 64
std::string scenario_hash_hex(const Scenario& s);

}  // namespace cetana
