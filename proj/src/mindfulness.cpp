#include "cetana/mindfulness.hpp"

#include <algorithm>

namespace cetana {

namespace {

std::optional<std::string> strongest_unwholesome(const MindState& mind,
                                                 const MindfulnessConfig& cfg) {
  std::optional<std::string> best;
  double best_v = 0.0;
  for (const auto& name : cfg.unwholesome) {  // set order = lexicographic tie-break
    const double v = mind.intensity(name);
    if (v >= cfg.theta && v > best_v) {
      best = name;
      best_v = v;
    }
  }
  return best;
}

void raise_factor(FactorMap& factors, const std::string& name, double floor) {
  auto it = factors.find(name);
  if (it == factors.end()) {
    factors[name] = floor;
  } else {
    it->second = std::max(it->second, floor);
  }
}

}  // namespace

Ceta apply_mindfulness(const Ceta& prev, Ceta next, const MindfulnessConfig& cfg) {
  if (next.t != prev.t + 1) {
    throw TimeMismatchError("mindfulness needs consecutive cetas: prev t=" +
                            std::to_string(prev.t) + ", next t=" + std::to_string(next.t));
  }

  const auto target = strongest_unwholesome(prev.mind, cfg);
  if (target) {
    next.mental.objects.insert(make_quote(prev.t, "factor:" + *target));
    auto it = next.mind.factors.find(*target);
    if (it != next.mind.factors.end()) it->second *= cfg.rho;
  } else {
    next.mental.objects.insert(make_quote(prev.t, "mind"));
  }

  if (cfg.quote_focus) {
    for (auto idx : prev.body.focus) {
      if (idx < prev.body.pixels.size()) {
        next.mental.objects.insert(
            make_quote(prev.t, "object:" + std::to_string(prev.body.pixels[idx])));
      }
    }
  }

  raise_factor(next.mind.factors, "equanimity", cfg.equanimity_floor);
  if (cfg.right) raise_factor(next.mind.factors, "friendliness", cfg.equanimity_floor);
  raise_factor(next.mind.factors, "mindfulness", 1.0);
  return next;
}

std::vector<bool> mindfulness_mask(const MindfulnessConfig& cfg, std::size_t n_ticks) {
  std::vector<bool> mask(n_ticks, false);
  if (cfg.sharpness < 1) throw OutOfRangeError("sharpness must be >= 1");
  for (std::size_t k = 0; k < n_ticks; ++k) {
    mask[k] = (k % cfg.sharpness) < cfg.strength;
  }
  return mask;
}

std::uint64_t mindfulness_application_count(const MindfulnessConfig& cfg, std::uint64_t n_ticks) {
  if (cfg.sharpness < 1) throw OutOfRangeError("sharpness must be >= 1");
  const std::uint64_t n = cfg.sharpness;
  const std::uint64_t per_period = std::min(cfg.strength, n);
  const std::uint64_t full = n_ticks / n;
  const std::uint64_t rem = n_ticks % n;
  return full * per_period + std::min(rem, per_period);
}

Ceta set_focus(Ceta c, std::set<std::size_t> focus, std::set<std::string> selected,
               const AttentionCaps& caps) {
  for (auto idx : focus) {
    if (idx >= c.body.pixels.size()) {
      throw OutOfRangeError("focus index " + std::to_string(idx) + " outside pixel range");
    }
  }
  if (focus.size() > caps.body) {
    throw CapacityExceededError("|F| = " + std::to_string(focus.size()) + " exceeds capacity " +
                                std::to_string(caps.body));
  }
  for (const auto& a : selected) {
    if (!c.action.menu.count(a)) {
      throw OutOfRangeError("action '" + a + "' not in menu");
    }
  }
  if (selected.size() > caps.action) {
    throw CapacityExceededError("|G| = " + std::to_string(selected.size()) +
                                " exceeds capacity " + std::to_string(caps.action));
  }
  c.body.focus = std::move(focus);
  c.action.selected = std::move(selected);
  return c;
}

const char* layer_name(ConsciousnessLayer layer) {
  switch (layer) {
    case ConsciousnessLayer::NotPresent: return "absent";
    case ConsciousnessLayer::Pre: return "pre";
    case ConsciousnessLayer::Proto: return "proto";
    case ConsciousnessLayer::Full: return "full";
  }
  return "?";
}

ConsciousnessLayer classify_layer(const Trace& tr, int object_id, std::int64_t t, double theta) {
  const Ceta& now = tr.at_tick(t).ceta;
  const Ceta& next = tr.at_tick(t + 1).ceta;

  bool in_pixels = false;
  bool in_focus = false;
  for (std::size_t i = 0; i < now.body.pixels.size(); ++i) {
    if (now.body.pixels[i] != object_id) continue;
    in_pixels = true;
    if (now.body.focus.count(i)) {
      in_focus = true;
      break;
    }
  }
  if (!in_pixels) return ConsciousnessLayer::NotPresent;
  if (!in_focus) return ConsciousnessLayer::Pre;

  const bool mindful = next.mind.present("mindfulness", theta);
  const bool quoted = next.mental.contains_quote(t, "object:" + std::to_string(object_id));
  return (mindful && quoted) ? ConsciousnessLayer::Full : ConsciousnessLayer::Proto;
}

}  // namespace cetana
