#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "cetana/core.hpp"
#include "cetana/dynamics.hpp"

namespace cetana {

inline const std::set<std::string>& default_unwholesome_factors() {
  static const std::set<std::string> s{"anger", "aversion", "desire", "fear"};
  return s;
}

struct MindfulnessConfig {
  bool enabled = false;
  std::uint64_t sharpness = 1;  // apply on every n-th tick, n >= 1
  std::uint64_t strength = std::numeric_limits<std::uint64_t>::max();  // run length per period
  bool right = false;           // also raise friendliness
  double rho = 0.5;             // unwholesome-factor transformation coefficient
  double equanimity_floor = 0.5;
  double theta = kPresenceTheta;
  bool quote_focus = false;     // additionally quote attended body objects
  std::set<std::string> unwholesome = default_unwholesome_factors();
};

// Quoting operator, Applied to the ceta following `prev`:
//   - adds a quote of prev's strongest present unwholesome factor (ties by
//     name), or of prev's mind-state when none is present;
//   - scales that factor's intensity in `next` by rho;
//   - floors equanimity at equanimity_floor (and friendliness too when
//     cfg.right);
//   - marks the mindfulness factor fully present.
// TimeMismatchError unless next.t == prev.t + 1.
Ceta apply_mindfulness(const Ceta& prev, Ceta next, const MindfulnessConfig& cfg);

// mask[k] = true when tick k is scheduled: every sharpness-th tick anchors a
// run of `strength` consecutive applications. mask[k] = (k % n) < strength.
std::vector<bool> mindfulness_mask(const MindfulnessConfig& cfg, std::size_t n_ticks);

// Exact count of true entries in mindfulness_mask(cfg, n_ticks).
std::uint64_t mindfulness_application_count(const MindfulnessConfig& cfg, std::uint64_t n_ticks);

// Replaces attention: F over body pixels, G over the action menu.
// OutOfRangeError for indices/ids outside range, CapacityExceededError when
// a cap is crossed.
Ceta set_focus(Ceta c, std::set<std::size_t> focus, std::set<std::string> selected,
               const AttentionCaps& caps);

enum class ConsciousnessLayer { NotPresent, Pre, Proto, Full };

const char* layer_name(ConsciousnessLayer layer);

// Layer of a body object (identified by pixel value) at tick t:
//   NotPresent  object not among the pixels
//   Pre         present but no attended index carries it
//   Proto       attended, but t+1 is not mindful of it
//   Full        attended and t+1 is mindful with a quote of object@t
// Needs t and t+1 in the trace (IndexOutOfTraceError).
ConsciousnessLayer classify_layer(const Trace& tr, int object_id, std::int64_t t,
                                  double theta = kPresenceTheta);

}  // namespace cetana
