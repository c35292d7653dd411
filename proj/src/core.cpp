#include "cetana/core.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include <nlohmann/json.hpp>

namespace cetana {

FeelingTone feeling_from_int(int v) {
  if (v < -2 || v > 2) {
    throw OutOfRangeError("feeling tone out of range: " + std::to_string(v));
  }
  return static_cast<FeelingTone>(v);
}

double MindState::intensity(const std::string& name) const {
  auto it = factors.find(name);
  return it == factors.end() ? 0.0 : it->second;
}

bool MindState::present(const std::string& name, double theta) const {
  return intensity(name) >= theta;
}

MentalObject make_concept(std::string id) {
  return MentalObject{MentalObjectKind::Concept, std::move(id), 0};
}

MentalObject make_image(std::string id) {
  return MentalObject{MentalObjectKind::Image, std::move(id), 0};
}

MentalObject make_intention(std::string action_id) {
  return MentalObject{MentalObjectKind::Intention, std::move(action_id), 0};
}

MentalObject make_quote(QuotedObject q) {
  return MentalObject{MentalObjectKind::Quote, std::move(q.content), q.source};
}

MentalObject make_quote(std::int64_t source, std::string content) {
  return MentalObject{MentalObjectKind::Quote, std::move(content), source};
}

bool MentalInput::contains_quote(std::int64_t source, const std::string& content) const {
  return objects.count(MentalObject{MentalObjectKind::Quote, content, source}) > 0;
}

bool MentalInput::contains_quote_content(const std::string& content) const {
  for (const auto& o : objects) {
    if (o.kind == MentalObjectKind::Quote && o.id == content) return true;
  }
  return false;
}

void Trace::append(Ceta c, WorldState w) {
  const std::int64_t expected = t0 + static_cast<std::int64_t>(entries.size());
  if (c.t != expected) {
    throw TimeMismatchError("trace append at t=" + std::to_string(c.t) + ", expected t=" +
                            std::to_string(expected));
  }
  entries.push_back(TraceEntry{std::move(c), std::move(w)});
}

const TraceEntry& Trace::at_tick(std::int64_t t) const {
  if (!has_tick(t)) {
    throw IndexOutOfTraceError("tick " + std::to_string(t) + " outside trace [" +
                               std::to_string(t0) + ", " + std::to_string(last_tick()) + "]");
  }
  return entries[static_cast<std::size_t>(t - t0)];
}

bool Trace::has_tick(std::int64_t t) const {
  return !entries.empty() && t >= t0 && t <= last_tick();
}

CetaGroups decompose_ceta(const Ceta& c) {
  return CetaGroups{c.body, c.mental, c.mind.feeling, c.mind.factors, c.action};
}

Ceta recompose_ceta(const CetaGroups& groups, std::int64_t t) {
  Ceta c;
  c.body = std::get<0>(groups);
  c.mental = std::get<1>(groups);
  c.mind.feeling = std::get<2>(groups);
  c.mind.factors = std::get<3>(groups);
  c.action = std::get<4>(groups);
  c.t = t;
  return c;
}

std::vector<GroupValue> substream(const Trace& tr, Group group) {
  std::vector<GroupValue> out;
  out.reserve(tr.entries.size());
  for (const auto& e : tr.entries) {
    switch (group) {
      case Group::BodyInput: out.emplace_back(e.ceta.body); break;
      case Group::MentalInput: out.emplace_back(e.ceta.mental); break;
      case Group::Feeling: out.emplace_back(e.ceta.mind.feeling); break;
      case Group::Factors: out.emplace_back(e.ceta.mind.factors); break;
      case Group::Action: out.emplace_back(e.ceta.action); break;
      case Group::MindState: out.emplace_back(e.ceta.mind); break;
    }
  }
  return out;
}

std::vector<MindState> mind_state_stream(const Trace& tr) {
  std::vector<MindState> out;
  out.reserve(tr.entries.size());
  for (const auto& e : tr.entries) out.push_back(e.ceta.mind);
  return out;
}

std::vector<FeelingTone> feeling_stream(const Trace& tr) {
  std::vector<FeelingTone> out;
  out.reserve(tr.entries.size());
  for (const auto& e : tr.entries) out.push_back(e.ceta.mind.feeling);
  return out;
}

namespace {

const char* kind_name(MentalObjectKind k) {
  switch (k) {
    case MentalObjectKind::Concept: return "concept";
    case MentalObjectKind::Image: return "image";
    case MentalObjectKind::Intention: return "intention";
    case MentalObjectKind::Quote: return "quote";
  }
  return "?";
}

MentalObjectKind kind_from_name(const std::string& s) {
  if (s == "concept") return MentalObjectKind::Concept;
  if (s == "image") return MentalObjectKind::Image;
  if (s == "intention") return MentalObjectKind::Intention;
  if (s == "quote") return MentalObjectKind::Quote;
  throw OutOfRangeError("unknown mental object kind: " + s);
}

nlohmann::json object_to_json(const MentalObject& o) {
  nlohmann::json j;
  j["kind"] = kind_name(o.kind);
  j["id"] = o.id;
  if (o.kind == MentalObjectKind::Quote) j["source"] = o.source;
  return j;
}

MentalObject object_from_json(const nlohmann::json& j) {
  MentalObject o;
  o.kind = kind_from_name(j.at("kind").get<std::string>());
  o.id = j.at("id").get<std::string>();
  o.source = j.value("source", std::int64_t{0});
  return o;
}

}  // namespace

nlohmann::json to_json(const MindState& s) {
  nlohmann::json j;
  j["feeling"] = numeric(s.feeling);
  nlohmann::json f = nlohmann::json::object();
  for (const auto& [name, v] : s.factors) f[name] = v;
  j["factors"] = f;
  return j;
}

nlohmann::json to_json(const Ceta& c) {
  nlohmann::json j;
  j["t"] = c.t;
  j["pixels"] = c.body.pixels;
  j["focus"] = std::vector<std::size_t>(c.body.focus.begin(), c.body.focus.end());
  nlohmann::json objs = nlohmann::json::array();
  for (const auto& o : c.mental.objects) objs.push_back(object_to_json(o));
  j["mental"] = objs;
  j["mind"] = to_json(c.mind);
  j["menu"] = std::vector<std::string>(c.action.menu.begin(), c.action.menu.end());
  j["selected"] = std::vector<std::string>(c.action.selected.begin(), c.action.selected.end());
  return j;
}

nlohmann::json to_json(const WorldState& w) {
  nlohmann::json j;
  j["kind"] = w.kind;
  j["cells"] = w.cells;
  return j;
}

nlohmann::json to_json(const Trace& tr) {
  nlohmann::json j;
  j["t0"] = tr.t0;
  j["seed"] = tr.seed;
  j["scenario"] = tr.scenario_id;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : tr.entries) {
    nlohmann::json row;
    row["ceta"] = to_json(e.ceta);
    row["world"] = to_json(e.world);
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

std::string canonical_json(const Ceta& c) { return to_json(c).dump(); }
std::string canonical_json(const WorldState& w) { return to_json(w).dump(); }
std::string canonical_json(const Trace& tr) { return to_json(tr).dump(); }

Ceta ceta_from_json(const nlohmann::json& j) {
  Ceta c;
  c.t = j.at("t").get<std::int64_t>();
  c.body.pixels = j.at("pixels").get<std::vector<int>>();
  for (auto v : j.at("focus").get<std::vector<std::size_t>>()) c.body.focus.insert(v);
  for (const auto& o : j.at("mental")) c.mental.objects.insert(object_from_json(o));
  c.mind.feeling = feeling_from_int(j.at("mind").at("feeling").get<int>());
  for (auto it = j.at("mind").at("factors").begin(); it != j.at("mind").at("factors").end(); ++it) {
    c.mind.factors[it.key()] = it.value().get<double>();
  }
  for (const auto& a : j.at("menu")) c.action.menu.insert(a.get<std::string>());
  for (const auto& a : j.at("selected")) c.action.selected.insert(a.get<std::string>());
  return c;
}

WorldState world_from_json(const nlohmann::json& j) {
  WorldState w;
  w.kind = j.at("kind").get<std::string>();
  w.cells = j.at("cells").get<std::vector<std::int64_t>>();
  return w;
}

std::string format_double(double v) { return nlohmann::json(v).dump(); }

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw OutOfRangeError("not a number: '" + s + "'");
  }
  return v;
}

namespace {

inline std::size_t hash_mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2));
}

inline std::size_t hash_double(double v) {
  if (v == 0.0) v = 0.0;  // collapse -0.0 so hashing agrees with ==
  return std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(v));
}

}  // namespace

std::size_t hash_value(const MindState& s) {
  std::size_t h = hash_mix(0x51ab3e5d, static_cast<std::size_t>(numeric(s.feeling) + 2));
  for (const auto& [name, v] : s.factors) {
    h = hash_mix(h, std::hash<std::string>{}(name));
    h = hash_mix(h, hash_double(v));
  }
  return h;
}

std::size_t hash_value(const WorldState& w) {
  std::size_t h = std::hash<std::string>{}(w.kind);
  for (auto c : w.cells) h = hash_mix(h, std::hash<std::int64_t>{}(c));
  return h;
}

}  // namespace cetana
