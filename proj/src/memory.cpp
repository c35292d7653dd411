#include "cetana/memory.hpp"

#include <nlohmann/json.hpp>

namespace cetana {

void AssocMemory::observe_pair(const std::string& cue, const std::string& target,
                               std::int64_t tick) {
  auto it = pairs_.find(cue);
  if (it != pairs_.end()) {
    if (it->second.target == target) {
      ++it->second.strength;
    } else {
      it->second.target = target;  // relearn: cue re-bound to the new target
      it->second.strength = 1;
    }
    it->second.last_used_tick = tick;
    it->second.last_used_seq = ++seq_;
    return;
  }
  if (capacity_ == 0) return;
  if (pairs_.size() >= capacity_) evict_lru();
  pairs_[cue] = Pair{target, 1, tick, ++seq_};
}

std::optional<std::string> AssocMemory::recall(const std::string& cue, RandomnessSource& rng,
                                               std::int64_t tick) {
  auto it = pairs_.find(cue);
  if (it == pairs_.end() || it->second.strength < activation_) return std::nullopt;
  if (!rng.bernoulli(reliability_)) return std::nullopt;
  it->second.last_used_tick = tick;
  it->second.last_used_seq = ++seq_;
  return it->second.target;
}

void AssocMemory::evict_lru() {
  auto victim = pairs_.begin();
  for (auto it = pairs_.begin(); it != pairs_.end(); ++it) {
    if (it->second.last_used_seq < victim->second.last_used_seq) victim = it;
  }
  pairs_.erase(victim);
}

nlohmann::json AssocMemory::to_json() const {
  nlohmann::json pairs = nlohmann::json::object();
  for (const auto& [cue, p] : pairs_) {
    nlohmann::json j;
    j["target"] = p.target;
    j["strength"] = p.strength;
    j["lastUsed"] = p.last_used_tick;
    pairs[cue] = j;
  }
  nlohmann::json j;
  j["capacity"] = capacity_;
  j["reliability"] = reliability_;
  j["activation"] = activation_;
  j["pairs"] = pairs;
  return j;
}

}  // namespace cetana
