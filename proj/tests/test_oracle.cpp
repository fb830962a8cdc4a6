#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "thinht/oracle.hpp"

using namespace thinht;

TEST_CASE("member_at follows entry stages") {
  OracleTrace t({{0, 3}}, 10);
  CHECK_FALSE(t.member_at(0, 2));
  CHECK(t.member_at(0, 3));
  OracleTrace t2({{0, 3}, {4, 1}}, 10);
  CHECK(t2.member_at(4, 5));
  CHECK_THROWS_WITH_AS(t.member_at(0, 11), "stage beyond trace horizon",
                       InputError);
}

TEST_CASE("trace invariants") {
  CHECK_THROWS_AS(OracleTrace({{0, 3}, {0, 5}}, 10), InputError);
  CHECK_THROWS_AS(OracleTrace({{0, 11}}, 10), InputError);
}

TEST_CASE("settle_stage") {
  CHECK(settle_stage(OracleTrace({{0, 3}}, 8)) == 3);
  CHECK(settle_stage(OracleTrace({}, 8)) == 0);
  CHECK(settle_stage(OracleTrace({{0, 3}, {4, 7}}, 8)) == 7);
}

TEST_CASE("approximant uses entry-time order with value tiebreak") {
  EnumFamily fam({OracleTrace({{9, 1}, {4, 2}, {7, 2}}, 5)});
  Approximant a = approximant(fam, 0, 2, 3);
  CHECK(a.elements == std::vector<u64>{9, 4});
  CHECK_FALSE(a.fallback);
}

TEST_CASE("approximant fallback and degenerate cases") {
  EnumFamily fam({OracleTrace({}, 8)});
  Approximant a = approximant(fam, 0, 3, 5);
  CHECK(a.fallback);
  CHECK(a.elements == std::vector<u64>{0, 1, 2});

  Approximant zero = approximant(fam, 0, 0, 5);
  CHECK_FALSE(zero.fallback);
  CHECK(zero.elements.empty());
}

TEST_CASE("approximant elements come from the enumeration unless fallback") {
  Rng rng(5);
  for (int round = 0; round < 50; ++round) {
    OracleTrace t = random_trace(1 + rng.below(6), 30, 20, rng);
    EnumFamily fam({t});
    for (u64 s = 0; s <= 20; ++s) {
      for (u64 n = 0; n <= 7; ++n) {
        Approximant a = approximant(fam, 0, n, s);
        CHECK(a.elements.size() == n);
        if (!a.fallback) {
          for (u64 x : a.elements) CHECK(t.member_at(x, s));
        } else {
          for (u64 i = 0; i < n; ++i) CHECK(a.elements[i] == i);
        }
      }
    }
  }
}

TEST_CASE("entry-time order is a strict total order") {
  Rng rng(7);
  for (int round = 0; round < 30; ++round) {
    OracleTrace t = random_trace(6, 40, 15, rng);
    u64 s = 15;
    std::vector<std::pair<u64, u64>> keyed;  // (t_x, x)
    for (const auto& [m, st] : t.entries())
      if (st <= s) keyed.emplace_back(st, m);
    for (const auto& a : keyed)
      for (const auto& b : keyed) {
        bool lt = a < b, gt = b < a, eq = a == b;
        CHECK((lt ? 1 : 0) + (gt ? 1 : 0) + (eq ? 1 : 0) == 1);
      }
  }
}

TEST_CASE("stable_approximant finds the limit and its onset") {
  {
    EnumFamily fam({OracleTrace({{9, 1}}, 6)});
    auto [a, from] = stable_approximant(fam, 0, 1);
    CHECK(a.elements == std::vector<u64>{9});
    CHECK(from <= 1);
  }
  {
    EnumFamily fam({OracleTrace({{9, 1}, {4, 2}}, 6)});
    auto [a, from] = stable_approximant(fam, 0, 2);
    CHECK(a.elements == std::vector<u64>{9, 4});
    CHECK(from == 2);
  }
  {
    EnumFamily fam({OracleTrace({}, 6)});
    auto [a, from] = stable_approximant(fam, 0, 2);
    CHECK(a.fallback);
    CHECK(a.elements == std::vector<u64>{0, 1});
    CHECK(from == 0);
  }
}

TEST_CASE("approximants are constant past the settle stage") {
  Rng rng(9);
  for (int round = 0; round < 40; ++round) {
    OracleTrace t = random_trace(1 + rng.below(7), 25, 18, rng);
    EnumFamily fam({t});
    u64 settle = settle_stage(t);
    for (u64 n = 0; n <= 8; ++n) {
      Approximant base = approximant(fam, 0, n, settle);
      for (u64 s = settle; s <= t.horizon(); ++s)
        CHECK(approximant(fam, 0, n, s).same_set(base));
      // eventual queries beyond the horizon agree with the limit
      CHECK(approximant_eventual(fam, 0, n, t.horizon() + 100).same_set(base));
    }
  }
}
