#pragma once

#include <cstdint>

namespace cetana {

// Counting splitmix64 stream. Identical seed and draw order give an
// identical draw sequence, which is what makes whole runs replayable.
// fork() derives an independent child stream without advancing the parent,
// so per-tick sub-streams can be handed out in a fixed order.
class RandomnessSource {
public:
  explicit RandomnessSource(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    ++draws_;
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Independent derived stream; the parent's counter is untouched.
  RandomnessSource fork(std::uint64_t stream) const {
    return RandomnessSource(mix(seed_ ^ mix(stream + 0x632BE59BD9B4E019ull)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDull;
    z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ull;
    return z ^ (z >> 33);
  }

private:
  std::uint64_t seed_;
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
};

}  // namespace cetana
