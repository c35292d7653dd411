#include "doctest.h"

#include "cetana/memory.hpp"
#include "support/oracles.hpp"

using namespace cetana;

TEST_CASE("observing a pair stores and strengthens it") {
  AssocMemory m(8, 1.0, 3);
  m.observe_pair("bell", "food", 0);
  REQUIRE(m.size() == 1);
  CHECK(m.pairs().at("bell").strength == 1);

  m.observe_pair("bell", "food", 1);
  m.observe_pair("bell", "food", 2);
  CHECK(m.pairs().at("bell").strength == 3);

  // Re-pairing the cue with a new target starts over.
  m.observe_pair("bell", "walk", 3);
  CHECK(m.pairs().at("bell").target == "walk");
  CHECK(m.pairs().at("bell").strength == 1);
}

TEST_CASE("insertion at capacity evicts the least recently used pair") {
  AssocMemory m(2, 1.0, 1);
  m.observe_pair("c", "d", 0);
  m.observe_pair("a", "b", 1);  // (c,d) now least recently used
  m.observe_pair("e", "f", 2);
  CHECK(m.size() == 2);
  CHECK(m.pairs().count("c") == 0);
  CHECK(m.pairs().count("a") == 1);
  CHECK(m.pairs().count("e") == 1);
}

TEST_CASE("recall needs activation strength and passes the reliability draw") {
  AssocMemory m(8, 1.0, 3);
  RandomnessSource rng(1);
  m.observe_pair("bell", "food", 0);
  CHECK_FALSE(m.recall("bell", rng, 1).has_value());  // strength 1 < 3
  m.observe_pair("bell", "food", 1);
  m.observe_pair("bell", "food", 2);
  auto hit = m.recall("bell", rng, 3);
  REQUIRE(hit.has_value());
  CHECK(*hit == "food");
  CHECK_FALSE(m.recall("door", rng, 4).has_value());
}

TEST_CASE("failed recall leaves the store untouched") {
  AssocMemory m(8, 0.0, 1);
  m.observe_pair("bell", "food", 0);
  const AssocMemory before = m;
  RandomnessSource rng(5);
  CHECK_FALSE(m.recall("bell", rng, 9).has_value());
  CHECK(m == before);
  CHECK(rng.draws() == 1);
}

TEST_CASE("empirical recall rate tracks the configured reliability") {
  AssocMemory m(4, 0.8, 3);
  for (int i = 0; i < 3; ++i) m.observe_pair("bell", "food", i);
  RandomnessSource rng(2024);
  int hits = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    if (m.recall("bell", rng, 10 + i)) ++hits;
  }
  const double rate = static_cast<double>(hits) / trials;
  CHECK(rate == doctest::Approx(0.8).epsilon(0.025));
}

TEST_CASE("behaviour matches the brute-force list model over random op sequences") {
  AssocMemory m(4, 0.7, 2);
  oracle::BruteLru ref(4, 0.7, 2);
  RandomnessSource ops(99);
  RandomnessSource draws_a(31337);
  RandomnessSource draws_b(31337);
  const std::vector<std::string> ids{"a", "b", "c", "d", "e", "f", "g"};
  for (int i = 0; i < 5000; ++i) {
    const auto cue = ids[ops.next_below(ids.size())];
    if (ops.bernoulli(0.55)) {
      const auto target = ids[ops.next_below(ids.size())];
      m.observe_pair(cue, target, i);
      ref.observe(cue, target, i);
    } else {
      const auto got = m.recall(cue, draws_a, i);
      const auto want = ref.recall(cue, draws_b);
      CHECK(got == want);
    }
    REQUIRE(m.size() <= m.capacity());
    REQUIRE(m.size() == ref.size());
  }
}
