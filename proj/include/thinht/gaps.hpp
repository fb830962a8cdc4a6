#pragma once

// Gap geometry against a staged oracle: short / very short gap counting,
// the prime-pair coloring, window diagnostics for color absence, and the
// decoder that recovers oracle membership from a 2-apart solution window.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thinht/binum.hpp"
#include "thinht/oracle.hpp"

namespace thinht {

bool is_prime(u64 n);
// Least prime p with v % p != 0. Undefined only at v = 0 (every prime
// divides 0), which callers must handle.
u64 least_prime_not_dividing(u64 v);

// Either Bottom (reserved for very-short-gap count 0) or a pair (p, i)
// with p prime and 1 <= i < p.
struct PrimePairColor {
  bool bottom = true;
  u64 p = 0;
  u64 i = 0;

  static PrimePairColor make_bottom() { return {}; }
  static PrimePairColor make(u64 p, u64 i);

  bool operator==(const PrimePairColor& o) const {
    return bottom == o.bottom && (bottom || (p == o.p && i == o.i));
  }
  bool operator!=(const PrimePairColor& o) const { return !(*this == o); }
  std::string str() const;
};

// Bijection with the naturals: Bottom <-> 0, then (p, i) by p ascending,
// i ascending: (2,1) <-> 1, (3,1) <-> 2, (3,2) <-> 3, (5,1) <-> 4, ...
u64 color_encode(const PrimePairColor& c);
PrimePairColor color_decode(u64 code);

struct GapInfo {
  u64 lo = 0;
  u64 hi = 0;
  bool is_short = false;
  bool is_very_short = false;
};

struct GapCounts {
  u64 sg = 0;   // short gaps: a late oracle entry below lo, after stage hi
  u64 vsg = 0;  // very short: the entry also lands by the number's top bit
  std::vector<GapInfo> gaps;
};

// Gap (lo, hi) between consecutive exponents of x is short iff some oracle
// element m < lo enters strictly after stage hi; very short iff that entry
// additionally happens by stage mu(x). Stages referenced beyond the horizon
// resolve to final membership (traces are total).
GapCounts gap_counts(const BinNum& x, const OracleTrace& trace);

// Bottom when vsg(x) = 0; otherwise (p, vsg mod p) for the least prime p
// not dividing vsg(x).
PrimePairColor encode_color(const BinNum& x, const OracleTrace& trace);

// For 1 <= j < p: exact color match. For j in {0, p}: true iff every prime
// <= p divides vsg(x); Bottom satisfies this for every p.
bool has_color(const BinNum& x, const OracleTrace& trace, u64 p, u64 j);

// A finite window offered as a thin-solution certificate: a 2-apart set,
// the color code it claims to avoid, and a front trim.
struct SolutionCandidate {
  NumSet y;
  u64 witness_color = 0;  // color code
  u64 trim = 0;           // elements dropped from the front
};

struct ColorBucket {
  u64 count = 0;
  u64 max_lambda = 0;
};

// Per-color window diagnostic over fs_enumerate(Y, q): for each color code
// attained, the count and the largest lambda attained; plus the (p, 0)
// buckets (every prime <= p divides vsg) for each prime p up to the largest
// color prime seen, and at least p = 2.
struct AbsenceReport {
  u64 window_size = 0;
  std::map<u64, ColorBucket> by_color_code;
  std::map<u64, ColorBucket> p0_buckets;
};

AbsenceReport almost_absence_report(const NumSet& y, const OracleTrace& trace,
                                    const FsQuery& q);

struct Violation {
  std::string kind;    // "not-two-apart" | "witness-color-present" |
                       // "divisibility" | "witness-not-prime-color"
  std::string detail;
};

struct Verdict {
  bool pass = true;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
};

// Checks, on the finite window fs_enumerate(Y', q) with Y' the trimmed set:
// (a) Y' is 2-apart; (b) no window element has color code equal to the
// witness; (c) the witness prime divides sg(x) for every window element
// (an all-Bottom window has sg counts the check still evaluates literally).
// An empty Y' passes vacuously with a warning.
Verdict verify_candidate(const SolutionCandidate& cand,
                         const OracleTrace& trace, const FsQuery& q);

// Least trim in 0 .. |Y|-2 whose verdict passes, scanning upward.
std::optional<u64> least_valid_trim(const SolutionCandidate& cand,
                                    const OracleTrace& trace,
                                    const FsQuery& q);

// Runs the decoder: after trimming, take the first pair x < y in ascending
// order with n < mu(x) and answer membership of n at stage lambda(y).
// Throws "window exhausted" when no pair qualifies and "not a valid
// solution window" when verification fails.
bool decode_membership(u64 n, const SolutionCandidate& cand,
                       const OracleTrace& trace);

// Builds a candidate guaranteed to verify and decode correctly for every
// n <= floor: powers of two with exponents strictly above both the settle
// stage and the floor, so every window gap sits above all entry activity.
SolutionCandidate make_solution_candidate(const OracleTrace& trace, u64 floor,
                                          u64 size = 3);

}  // namespace thinht
