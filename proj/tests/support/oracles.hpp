#pragma once

// Independent reference implementations the suites check against. These stay
// deliberately naive: linear scans, quadratic searches, explicit expectation
// trees.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cetana/core.hpp"
#include "cetana/dynamics.hpp"
#include "cetana/rng.hpp"

namespace cetana::oracle {

// List-backed cued-recall model mirroring the contract: LRU eviction at
// capacity, activation threshold, flat reliability.
class BruteLru {
public:
  BruteLru(std::size_t capacity, double reliability, int activation)
      : capacity_(capacity), reliability_(reliability), activation_(activation) {}

  void observe(const std::string& cue, const std::string& target, std::int64_t tick) {
    (void)tick;
    for (auto it = items_.begin(); it != items_.end(); ++it) {
      if (it->cue == cue) {
        Item item = *it;
        if (item.target == target) {
          ++item.strength;
        } else {
          item.target = target;
          item.strength = 1;
        }
        items_.erase(it);
        items_.push_back(item);  // back = most recently used
        return;
      }
    }
    if (capacity_ == 0) return;
    if (items_.size() >= capacity_) items_.erase(items_.begin());
    items_.push_back(Item{cue, target, 1});
  }

  std::optional<std::string> recall(const std::string& cue, RandomnessSource& rng) {
    for (auto it = items_.begin(); it != items_.end(); ++it) {
      if (it->cue != cue) continue;
      if (it->strength < activation_) return std::nullopt;
      if (!rng.bernoulli(reliability_)) return std::nullopt;
      Item item = *it;
      items_.erase(it);
      items_.push_back(item);
      return item.target;
    }
    return std::nullopt;
  }

  std::size_t size() const { return items_.size(); }

  std::vector<std::string> cues_lru_order() const {
    std::vector<std::string> out;
    for (const auto& i : items_) out.push_back(i.cue);
    return out;
  }

private:
  struct Item {
    std::string cue;
    std::string target;
    int strength;
  };
  std::vector<Item> items_;
  std::size_t capacity_;
  double reliability_;
  int activation_;
};

// Quadratic minimal eventually-periodic scan; the reference for detect_loop.
inline std::optional<std::pair<std::size_t, std::size_t>> brute_loop(
    const std::vector<MindState>& stream) {
  const std::size_t n = stream.size();
  for (std::size_t start = 0; start + 1 < n; ++start) {
    for (std::size_t period = 1; start + period < n; ++period) {
      bool ok = true;
      for (std::size_t k = start; k + period < n; ++k) {
        if (!(stream[k] == stream[k + period])) {
          ok = false;
          break;
        }
      }
      if (ok) return std::make_pair(start, period);
    }
  }
  return std::nullopt;
}

// Brent's cycle finding on x' = f(x): power-of-two teleporting tortoise for
// the period, then the start-recovery phase for mu.
inline std::pair<std::size_t, std::size_t> brent(const std::function<std::size_t(std::size_t)>& f,
                                                 std::size_t x0) {
  std::size_t power = 1;
  std::size_t lam = 1;
  std::size_t tortoise = x0;
  std::size_t hare = f(x0);
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = f(hare);
    ++lam;
  }
  std::size_t mu = 0;
  tortoise = x0;
  hare = x0;
  for (std::size_t i = 0; i < lam; ++i) hare = f(hare);
  while (tortoise != hare) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++mu;
  }
  return {lam, mu};
}

// Exact expected pain over `horizon` ticks for the bandit used in the
// wholesomeness checks: selections are uniform over the menu except at tick
// 0 of the forced arm.
struct ExactBandit {
  std::map<std::string, std::vector<BanditOutcome>> arms;

  double tick_pain(const std::string& action) const {
    double pain = 0.0;
    for (const auto& o : arms.at(action)) {
      pain += o.prob * std::max(0, -numeric(o.feeling));
    }
    return pain;
  }

  double uniform_pain() const {
    double pain = 0.0;
    for (const auto& [id, _] : arms) pain += tick_pain(id) / static_cast<double>(arms.size());
    return pain;
  }

  // Expected pain averaged over the `horizon` ticks after the decision tick,
  // where the decision selects `first` (or uniformly when absent) and every
  // later selection is uniform over the menu.
  double expected_pain(int horizon, const std::optional<std::string>& first) const {
    double total = first ? tick_pain(*first) : uniform_pain();
    for (int k = 1; k < horizon; ++k) total += uniform_pain();
    return total / static_cast<double>(horizon);
  }

  double score(const std::string& action, int horizon) const {
    return expected_pain(horizon, action) - expected_pain(horizon, std::nullopt);
  }
};

}  // namespace cetana::oracle
