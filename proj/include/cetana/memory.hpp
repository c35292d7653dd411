#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "cetana/rng.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cetana {

// Cued-recall store: exact-cue pairs with bounded capacity, LRU eviction,
// an activation threshold before a pair can fire, and flat recall
// probability. Value type; a run owns its own copy.
class AssocMemory {
public:
  struct Pair {
    std::string target;
    int strength = 0;
    std::int64_t last_used_tick = 0;
    std::uint64_t last_used_seq = 0;  // internal LRU order, monotone

    bool operator==(const Pair&) const = default;
  };

  AssocMemory() = default;
  AssocMemory(std::size_t capacity, double reliability, int activation_threshold = 3)
      : capacity_(capacity), reliability_(reliability), activation_(activation_threshold) {}

  // Bumps strength of cue -> target. Observing a cue with a different
  // target restarts that cue at strength 1. Inserting past capacity evicts
  // the least recently used pair.
  void observe_pair(const std::string& cue, const std::string& target, std::int64_t tick);

  // Returns the target if the cue is known, its strength has reached the
  // activation threshold, and the reliability draw succeeds. Successful
  // recall refreshes the pair's LRU position; failure changes nothing
  // beyond the rng advancing.
  std::optional<std::string> recall(const std::string& cue, RandomnessSource& rng,
                                    std::int64_t tick);

  std::size_t size() const { return pairs_.size(); }
  std::size_t capacity() const { return capacity_; }
  double reliability() const { return reliability_; }
  int activation_threshold() const { return activation_; }
  const std::map<std::string, Pair>& pairs() const { return pairs_; }

  nlohmann::json to_json() const;

  bool operator==(const AssocMemory&) const = default;

private:
  void evict_lru();

  std::map<std::string, Pair> pairs_;
  std::size_t capacity_ = 16;
  double reliability_ = 1.0;
  int activation_ = 3;
  std::uint64_t seq_ = 0;
};

}  // namespace cetana
