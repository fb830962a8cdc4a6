#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "thinht/lll.hpp"

using namespace thinht;

namespace {

ExplicitFamily disjoint_pairs(u64 count) {
  std::vector<std::vector<u64>> sets;
  for (u64 i = 0; i < count; ++i) sets.push_back({2 * i, 2 * i + 1});
  return ExplicitFamily(std::move(sets), 2);
}

// Independent soundness scan: re-reads every set from the family and
// checks both colors appear, using nothing from two_color's internals.
bool no_monochromatic_set(const ConstraintFamily& fam,
                          const PartialColoring& c) {
  for (std::size_t j = 0;; ++j) {
    auto s = fam.set_at(j);
    if (!s) return true;
    if (s->empty() || s->back() >= c.frontier()) continue;
    bool saw0 = false, saw1 = false;
    for (u64 n : *s) (c.bits[n] ? saw1 : saw0) = true;
    if (!(saw0 && saw1)) return false;
  }
}

// Deliberately broken family: occurrence listing hides one set.
class LyingFamily : public ConstraintFamily {
 public:
  std::optional<std::vector<u64>> set_at(std::size_t j) const override {
    if (j >= 2) return std::nullopt;
    return std::vector<u64>{j, j + 10, j + 20};
  }
  std::vector<std::size_t> occurrences(u64 size, u64 point) const override {
    if (size != 3) return {};
    if (point == 0 || point == 10 || point == 20) return {0};
    return {};  // lies about set 1
  }
  u64 min_size() const override { return 3; }
};

}  // namespace

TEST_CASE("choose_M golden values") {
  CHECK(choose_M(0.5) == 13);
  CHECK(choose_M(0.25) == 8);
  CHECK(choose_M(0.75) == 30);
  CHECK(choose_M(0.5) >= choose_M(0.25));   // monotone in q
  CHECK(choose_M(0.9) >= choose_M(0.5));
  CHECK_THROWS_AS(choose_M(0.0), InputError);
  CHECK_THROWS_AS(choose_M(1.0), InputError);
}

TEST_CASE("occurrence_audit accepts sparse families") {
  ExplicitFamily fam = disjoint_pairs(5);
  LllParams params;
  params.q = 0.5;
  params.min_set_size = 2;
  OccurrenceVerdict v = occurrence_audit(fam, params, 4, 16);
  CHECK(v.pass);
}

TEST_CASE("occurrence_audit rejects a crowded point") {
  // three size-2 sets through point 0 against 2^(q*2) = 2
  ExplicitFamily fam({{0, 1}, {0, 2}, {0, 3}}, 2);
  LllParams params;
  params.q = 0.5;
  params.min_set_size = 2;
  OccurrenceVerdict v = occurrence_audit(fam, params, 2, 4);
  CHECK_FALSE(v.pass);
}

TEST_CASE("occurrence_audit on an empty family") {
  ExplicitFamily fam({}, 2);
  LllParams params;
  params.min_set_size = 2;
  CHECK(occurrence_audit(fam, params, 6, 32).pass);
}

TEST_CASE("occurrence_audit catches inconsistent listings") {
  LyingFamily fam;
  LllParams params;
  params.q = 0.9;  // generous bound; only consistency can fail
  params.min_set_size = 3;
  OccurrenceVerdict v = occurrence_audit(fam, params, 3, 32);
  CHECK_FALSE(v.pass);
}

TEST_CASE("occurrence_audit is monotone in its bounds") {
  ExplicitFamily fam = random_sparse_family(128, 12, 4, 2, 0.5, 99);
  LllParams params;
  params.q = 0.5;
  params.min_set_size = 4;
  REQUIRE(occurrence_audit(fam, params, 8, 127).pass);
  for (u64 m_max : {4, 5, 6})
    for (u64 n_max : {15, 63, 100})
      CHECK(occurrence_audit(fam, params, m_max, n_max).pass);
}

TEST_CASE("two_color separates disjoint pairs") {
  ExplicitFamily fam = disjoint_pairs(5);
  LllParams params;
  params.min_set_size = 2;
  params.seed = 7;
  PartialColoring c = two_color(fam, params, PartialColoring{}, 10);
  REQUIRE(c.frontier() == 10);
  for (u64 i = 0; i < 5; ++i) CHECK(c.bits[2 * i] != c.bits[2 * i + 1]);
}

TEST_CASE("two_color on an empty family keeps seeded defaults") {
  ExplicitFamily fam({}, 2);
  LllParams params;
  params.seed = 42;
  PartialColoring a = two_color(fam, params, PartialColoring{}, 16);
  PartialColoring b = two_color(fam, params, PartialColoring{}, 16);
  CHECK(a.bits == b.bits);
  // defaults are position hashes, not all equal
  CHECK(std::count(a.bits.begin(), a.bits.end(), 1) > 0);
  CHECK(std::count(a.bits.begin(), a.bits.end(), 0) > 0);
}

TEST_CASE("two_color is deterministic and prefix-stable") {
  ExplicitFamily fam = random_sparse_family(128, 20, 5, 2, 0.5, 1234);
  LllParams params;
  params.q = 0.5;
  params.min_set_size = 5;
  params.seed = 99;

  PartialColoring half = two_color(fam, params, PartialColoring{}, 64);
  PartialColoring full = two_color(fam, params, half, 128);
  for (u64 n = 0; n < 64; ++n) CHECK(full.bits[n] == half.bits[n]);
  CHECK(no_monochromatic_set(fam, full));

  PartialColoring again = two_color(fam, params, half, 128);
  CHECK(again.bits == full.bits);
}

TEST_CASE("two_color soundness over random audited families") {
  for (u64 seed = 0; seed < 25; ++seed) {
    ExplicitFamily fam = random_sparse_family(256, 30, 6, 3, 0.5, seed);
    LllParams params;
    params.q = 0.5;
    params.min_set_size = 6;
    params.seed = seed * 17 + 1;
    REQUIRE(occurrence_audit(fam, params, 9, 255).pass);
    PartialColoring c = two_color(fam, params, PartialColoring{}, 256);
    CHECK(no_monochromatic_set(fam, c));
  }
}

TEST_CASE("two_color reports unfixable committed conflicts") {
  ExplicitFamily fam({{0, 1}}, 2);
  LllParams params;
  PartialColoring forced;
  forced.bits = {1, 1};  // the only set, fully committed, monochromatic
  try {
    two_color(fam, params, forced, 4);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    REQUIRE(e.violating_sets.size() == 1);
    CHECK(e.violating_sets[0] == 0);
  }
}

TEST_CASE("two_color budget exhaustion carries violations") {
  ExplicitFamily fam({{0, 1}, {2, 3}}, 2);
  LllParams params;
  params.resample_budget = 0;
  params.seed = 3;
  // find a seed whose defaults violate something, then let budget 0 fail
  bool threw = false;
  for (u64 seed = 0; seed < 64 && !threw; ++seed) {
    params.seed = seed;
    try {
      two_color(fam, params, PartialColoring{}, 4);
    } catch (const BudgetExceeded& e) {
      threw = true;
      CHECK_FALSE(e.violating_sets.empty());
    }
  }
  CHECK(threw);
}

TEST_CASE("frontier may not shrink") {
  ExplicitFamily fam({}, 2);
  LllParams params;
  PartialColoring c = two_color(fam, params, PartialColoring{}, 8);
  CHECK_THROWS_AS(two_color(fam, params, c, 4), InputError);
}
