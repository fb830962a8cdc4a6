#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "thinht/gaps.hpp"

using namespace thinht;

namespace {

// Definition-level recomputation of short/very-short gap counts, sharing
// no code with gap_counts: direct scans of the entry list.
std::pair<u64, u64> naive_sg_vsg(const BinNum& x, const OracleTrace& trace) {
  const auto& exps = x.exponents();
  u64 sg = 0, vsg = 0;
  for (std::size_t i = 0; i + 1 < exps.size(); ++i) {
    bool s = false, v = false;
    for (const auto& [m, t] : trace.entries()) {
      if (m < exps[i] && t > exps[i + 1]) {
        s = true;
        if (t <= exps.back()) v = true;
      }
    }
    sg += s;
    vsg += v;
  }
  return {sg, vsg};
}

BinNum random_binnum(Rng& rng, u64 max_exp, u64 max_bits) {
  std::vector<u64> exps;
  u64 e = rng.below(max_exp);
  u64 bits = 1 + rng.below(max_bits);
  for (u64 i = 0; i < bits; ++i) {
    exps.push_back(e);
    e += 1 + rng.below(6);
  }
  return BinNum(exps);
}

}  // namespace

TEST_CASE("gap_counts on the reference trace") {
  OracleTrace trace({{0, 5}}, 8);
  {
    GapCounts gc = gap_counts(BinNum({1, 3, 8}), trace);
    CHECK(gc.sg == 1);
    CHECK(gc.vsg == 1);
    REQUIRE(gc.gaps.size() == 2);
    CHECK(gc.gaps[0].is_short);
    CHECK(gc.gaps[0].is_very_short);
    CHECK_FALSE(gc.gaps[1].is_short);
  }
  {
    GapCounts gc = gap_counts(BinNum({1, 3}), trace);
    CHECK(gc.sg == 1);
    CHECK(gc.vsg == 0);
  }
  {
    OracleTrace empty({}, 8);
    GapCounts gc = gap_counts(BinNum({1, 3, 8}), empty);
    CHECK(gc.sg == 0);
    CHECK(gc.vsg == 0);
  }
}

TEST_CASE("gap_counts agrees with the definitional recomputation") {
  Rng rng(41);
  for (int round = 0; round < 300; ++round) {
    OracleTrace t = random_trace(rng.below(6), 20, 40, rng);
    BinNum x = random_binnum(rng, 30, 6);
    GapCounts gc = gap_counts(x, t);
    auto [sg, vsg] = naive_sg_vsg(x, t);
    CHECK(gc.sg == sg);
    CHECK(gc.vsg == vsg);
    CHECK(gc.vsg <= gc.sg);  // a very short witness is a short witness
  }
}

TEST_CASE("encode_color picks the least non-dividing prime") {
  // vsg 5 -> (2,1); vsg 6 -> (5,1); vsg 0 -> bottom.
  auto with_vsg = [](u64 v) {
    // exponents 1..v+1 then a top bit far above: the v inner gaps are all
    // very short against an entry at stage 99, the last gap is not short.
    std::vector<u64> exps;
    for (u64 i = 1; i <= v + 1; ++i) exps.push_back(i);
    exps.push_back(100);
    return BinNum(exps);
  };
  OracleTrace trace({{0, 99}}, 100);
  {
    GapCounts gc = gap_counts(with_vsg(5), trace);
    REQUIRE(gc.vsg == 5);
    CHECK(encode_color(with_vsg(5), trace) == PrimePairColor::make(2, 1));
  }
  {
    GapCounts gc = gap_counts(with_vsg(6), trace);
    REQUIRE(gc.vsg == 6);
    CHECK(encode_color(with_vsg(6), trace) == PrimePairColor::make(5, 1));
  }
  CHECK(encode_color(BinNum({1, 3}), OracleTrace({{0, 5}}, 8)).bottom);
}

TEST_CASE("encode_color never returns a (p,0) shape") {
  Rng rng(43);
  for (int round = 0; round < 200; ++round) {
    OracleTrace t = random_trace(rng.below(6), 20, 40, rng);
    BinNum x = random_binnum(rng, 30, 8);
    PrimePairColor c = encode_color(x, t);
    if (!c.bottom) {
      CHECK(c.i >= 1);
      CHECK(c.i < c.p);
    }
  }
}

TEST_CASE("has_color matches the convention") {
  OracleTrace trace({{0, 99}}, 100);
  std::vector<u64> exps;
  for (u64 i = 1; i <= 7; ++i) exps.push_back(i);
  exps.push_back(100);
  BinNum x6(exps);  // vsg = 6
  REQUIRE(gap_counts(x6, trace).vsg == 6);
  CHECK(has_color(x6, trace, 2, 0));
  CHECK(has_color(x6, trace, 5, 1));
  CHECK_FALSE(has_color(x6, trace, 2, 1));
  CHECK(has_color(x6, trace, 3, 0));
  CHECK(has_color(x6, trace, 3, 3));

  BinNum bottom({1, 3});
  OracleTrace tr2({{0, 5}}, 8);
  CHECK(has_color(bottom, tr2, 7, 0));
  CHECK(has_color(bottom, tr2, 2, 0));
}

TEST_CASE("has_color (p,0) and (p,p) coincide") {
  Rng rng(47);
  for (int round = 0; round < 200; ++round) {
    OracleTrace t = random_trace(rng.below(5), 16, 30, rng);
    BinNum x = random_binnum(rng, 24, 7);
    for (u64 p : {2, 3, 5, 7})
      CHECK(has_color(x, t, p, 0) == has_color(x, t, p, p));
  }
}

TEST_CASE("color codec enumeration and round trip") {
  CHECK(color_encode(PrimePairColor::make_bottom()) == 0);
  CHECK(color_encode(PrimePairColor::make(2, 1)) == 1);
  CHECK(color_encode(PrimePairColor::make(3, 1)) == 2);
  CHECK(color_encode(PrimePairColor::make(3, 2)) == 3);
  CHECK(color_encode(PrimePairColor::make(5, 1)) == 4);
  CHECK(color_decode(0).bottom);
  for (u64 code = 0; code < 10000; ++code)
    CHECK(color_encode(color_decode(code)) == code);
}

TEST_CASE("gap additivity for 2-apart pairs") {
  // sg(x+y) = sg(x) + sg(y) + [bridge gap short], always, because gap
  // shortness depends only on the gap endpoints.
  Rng rng(53);
  int bridge_short_seen = 0;
  for (int round = 0; round < 2000; ++round) {
    OracleTrace t = random_trace(rng.below(7), 20, 50, rng);
    BinNum x = random_binnum(rng, 18, 4);
    std::vector<u64> yexps;
    u64 e = x.mu() + 1 + rng.below(10);
    u64 bits = 1 + rng.below(4);
    for (u64 i = 0; i < bits; ++i) {
      yexps.push_back(e);
      e += 1 + rng.below(5);
    }
    BinNum y(yexps);
    REQUIRE(x.mu() < y.lambda());

    u64 sx = gap_counts(x, t).sg;
    u64 sy = gap_counts(y, t).sg;
    u64 sxy = gap_counts(add(x, y), t).sg;
    bool bridge_short = false;
    for (const auto& [m, st] : t.entries())
      if (m < x.mu() && st > y.lambda()) bridge_short = true;
    CHECK(sxy == sx + sy + (bridge_short ? 1 : 0));
    if (bridge_short) ++bridge_short_seen;
  }
  CHECK(bridge_short_seen > 0);  // the +1 case is exercised
}

TEST_CASE("decode_membership on the harness window") {
  OracleTrace trace({{0, 3}}, 8);
  SolutionCandidate cand;
  cand.y = NumSet({BinNum({10}), BinNum({20}), BinNum({40})});
  cand.witness_color = 1;  // (2,1)
  CHECK(decode_membership(0, cand, trace));
  CHECK_FALSE(decode_membership(1, cand, trace));

  SolutionCandidate tiny;
  tiny.y = NumSet({BinNum({10})});
  tiny.witness_color = 1;
  CHECK_THROWS_WITH_AS(decode_membership(0, tiny, trace), "window exhausted",
                       InputError);
}

TEST_CASE("verify_candidate verdicts") {
  OracleTrace trace({{0, 3}}, 8);
  FsQuery q(3);
  {
    SolutionCandidate cand = make_solution_candidate(trace, 3);
    CHECK(verify_candidate(cand, trace, q).pass);
  }
  {
    // {2^1+2^3, 2^8}: the pair sum has vsg = 1, color (2,1) = witness.
    SolutionCandidate cand;
    cand.y = NumSet({BinNum({1, 3}), BinNum({8})});
    cand.witness_color = 1;
    OracleTrace tr({{0, 5}}, 8);
    Verdict v = verify_candidate(cand, tr, FsQuery(2));
    CHECK_FALSE(v.pass);
    bool saw_witness_violation = false;
    for (const auto& viol : v.violations)
      if (viol.kind == "witness-color-present") saw_witness_violation = true;
    CHECK(saw_witness_violation);
  }
  {
    SolutionCandidate empty;
    empty.witness_color = 1;
    Verdict v = verify_candidate(empty, trace, q);
    CHECK(v.pass);
    CHECK(v.warnings.size() == 1);
  }
  {
    // a bottom witness names no prime
    SolutionCandidate cand = make_solution_candidate(trace, 3);
    cand.witness_color = 0;
    Verdict v = verify_candidate(cand, trace, q);
    CHECK_FALSE(v.pass);
    CHECK(v.violations[0].kind == "witness-not-prime-color");
  }
  {
    // not 2-apart
    SolutionCandidate cand;
    cand.y = NumSet::from_values({8, 18});
    cand.witness_color = 1;
    Verdict v = verify_candidate(cand, trace, FsQuery(2));
    CHECK_FALSE(v.pass);
    CHECK(v.violations[0].kind == "not-two-apart");
  }
}

TEST_CASE("least_valid_trim drops poisoned fronts") {
  OracleTrace trace({{0, 5}}, 8);
  // Front element pairs to an offending sum; the clean tail verifies.
  SolutionCandidate good = make_solution_candidate(trace, 8, 3);
  std::vector<BinNum> with_bad = {BinNum({1, 3})};
  for (const auto& b : good.y.elements()) with_bad.push_back(b);
  SolutionCandidate cand;
  cand.y = NumSet(with_bad);
  cand.witness_color = 1;
  FsQuery q(static_cast<u64>(cand.y.size()));
  CHECK_FALSE(verify_candidate(cand, trace, q).pass);
  auto trim = least_valid_trim(cand, trace, q);
  REQUIRE(trim.has_value());
  CHECK(*trim == 1);
}

TEST_CASE("decode round trip across random traces") {
  Rng rng(59);
  for (int round = 0; round < 60; ++round) {
    OracleTrace t = random_trace(1 + rng.below(8), 12, 64, rng);
    u64 top = t.max_element();
    SolutionCandidate cand = make_solution_candidate(t, top, 3);
    FsQuery q(3);
    CHECK(verify_candidate(cand, t, q).pass);
    for (u64 n = 0; n <= top; ++n)
      CHECK(decode_membership(n, cand, t) == t.member_final(n));
  }
}

TEST_CASE("almost_absence_report tabulates the window") {
  OracleTrace trace({{0, 5}}, 8);
  {
    // all elements above the settle stage: everything is bottom
    SolutionCandidate cand = make_solution_candidate(trace, 6, 3);
    AbsenceReport rep = almost_absence_report(cand.y, trace, FsQuery(3));
    CHECK(rep.window_size == 7);
    REQUIRE(rep.by_color_code.count(0) == 1);
    CHECK(rep.by_color_code.at(0).count == 7);
    CHECK(rep.by_color_code.size() == 1);
    CHECK(rep.p0_buckets.at(2).count == 7);
  }
  {
    OracleTrace empty({}, 8);
    NumSet y({BinNum({2}), BinNum({5})});
    AbsenceReport rep = almost_absence_report(y, empty, FsQuery(2));
    CHECK(rep.by_color_code.size() == 1);
    CHECK(rep.by_color_code.count(0) == 1);
  }
  {
    NumSet y({BinNum({1, 3})});
    AbsenceReport rep = almost_absence_report(y, trace, FsQuery(1));
    CHECK(rep.window_size == 1);
    CHECK(rep.by_color_code.at(0).count == 1);  // vsg = 0 -> bottom
  }
}
