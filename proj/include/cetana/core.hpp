#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "cetana/errors.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cetana {

// Factors with intensity at or above this are treated as present.
inline constexpr double kPresenceTheta = 0.05;

// Five-level hedonic scale. The numeric values double as the encoding, so
// ordering comparisons are just integer comparisons.
enum class FeelingTone : int {
  VeryUnpleasant = -2,
  Unpleasant = -1,
  Neutral = 0,
  Pleasant = 1,
  VeryPleasant = 2,
};

inline int numeric(FeelingTone f) { return static_cast<int>(f); }

FeelingTone feeling_from_int(int v);  // OutOfRangeError unless in [-2, 2]

// Factor intensities, keyed by name from the scenario's closed registry.
using FactorMap = std::map<std::string, double>;

struct MindState {
  FeelingTone feeling = FeelingTone::Neutral;
  FactorMap factors;

  double intensity(const std::string& name) const;
  bool present(const std::string& name, double theta = kPresenceTheta) const;

  bool operator==(const MindState&) const = default;
};

struct BodyInput {
  std::vector<int> pixels;         // discrete sense values
  std::set<std::size_t> focus;     // attended indices, subset of pixel range

  bool operator==(const BodyInput&) const = default;
};

enum class MentalObjectKind { Concept, Image, Intention, Quote };

// A reified fragment of an earlier ceta. `content` names what was quoted:
// "factor:<name>", "mind" (the whole mind-state group), or "object:<id>"
// for an attended body object.
struct QuotedObject {
  std::int64_t source = 0;
  std::string content;

  auto operator<=>(const QuotedObject&) const = default;
};

struct MentalObject {
  MentalObjectKind kind = MentalObjectKind::Concept;
  std::string id;            // concept/image/intention id, or quote content
  std::int64_t source = 0;   // quoted tick; 0 unless kind == Quote

  auto operator<=>(const MentalObject&) const = default;
};

MentalObject make_concept(std::string id);
MentalObject make_image(std::string id);
MentalObject make_intention(std::string action_id);
MentalObject make_quote(QuotedObject q);
MentalObject make_quote(std::int64_t source, std::string content);

struct MentalInput {
  std::set<MentalObject> objects;

  bool contains_quote(std::int64_t source, const std::string& content) const;
  bool contains_quote_content(const std::string& content) const;

  bool operator==(const MentalInput&) const = default;
};

struct Action {
  std::set<std::string> menu;      // available action ids
  std::set<std::string> selected;  // intended/executed subset

  bool operator==(const Action&) const = default;
};

// One consciousness configuration: the quintuple
// (body input, mental input, feeling, factors, action) at a tick.
struct Ceta {
  BodyInput body;
  MentalInput mental;
  MindState mind;
  Action action;
  std::int64_t t = 0;

  bool operator==(const Ceta&) const = default;
};

// Environment configuration. `cells` is opaque here; the dynamics module
// interprets it per world kind. Equality and hashing are exact, which loop
// detection and replay rely on.
struct WorldState {
  std::string kind;
  std::vector<std::int64_t> cells;

  bool operator==(const WorldState&) const = default;
};

struct TraceEntry {
  Ceta ceta;
  WorldState world;

  bool operator==(const TraceEntry&) const = default;
};

// Contiguous time-indexed run record. append() enforces that entry k sits
// at tick t0 + k.
struct Trace {
  std::vector<TraceEntry> entries;
  std::int64_t t0 = 0;
  std::uint64_t seed = 0;
  std::string scenario_id;

  void append(Ceta c, WorldState w);
  const TraceEntry& at_tick(std::int64_t t) const;  // IndexOutOfTraceError
  bool has_tick(std::int64_t t) const;
  std::int64_t last_tick() const { return t0 + static_cast<std::int64_t>(entries.size()) - 1; }
  std::size_t size() const { return entries.size(); }

  bool operator==(const Trace&) const = default;
};

// The five groups of a ceta, in stream order.
using CetaGroups = std::tuple<BodyInput, MentalInput, FeelingTone, FactorMap, Action>;

CetaGroups decompose_ceta(const Ceta& c);
Ceta recompose_ceta(const CetaGroups& groups, std::int64_t t);

enum class Group { BodyInput, MentalInput, Feeling, Factors, Action, MindState };

using GroupValue = std::variant<BodyInput, MentalInput, FeelingTone, FactorMap, Action, MindState>;

std::vector<GroupValue> substream(const Trace& tr, Group group);
std::vector<MindState> mind_state_stream(const Trace& tr);
std::vector<FeelingTone> feeling_stream(const Trace& tr);

// Canonical serialization: key-sorted JSON, byte-identical for equal values.
nlohmann::json to_json(const Ceta& c);
nlohmann::json to_json(const WorldState& w);
nlohmann::json to_json(const MindState& s);
nlohmann::json to_json(const Trace& tr);
std::string canonical_json(const Ceta& c);
std::string canonical_json(const WorldState& w);
std::string canonical_json(const Trace& tr);

Ceta ceta_from_json(const nlohmann::json& j);
WorldState world_from_json(const nlohmann::json& j);

// Shortest round-trip decimal form; the one double format used everywhere.
std::string format_double(double v);
double parse_double(const std::string& s);  // OutOfRangeError on garbage

std::size_t hash_value(const MindState& s);
std::size_t hash_value(const WorldState& w);

struct MindStateHash {
  std::size_t operator()(const MindState& s) const { return hash_value(s); }
};

}  // namespace cetana
