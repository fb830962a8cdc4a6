#include "thinht/gaps.hpp"

#include <algorithm>

namespace thinht {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 least_prime_not_dividing(u64 v) {
  if (v == 0) throw InputError("least_prime_not_dividing: undefined at 0");
  for (u64 p = 2;; ++p) {
    if (!is_prime(p)) continue;
    if (v % p != 0) return p;
  }
}

PrimePairColor PrimePairColor::make(u64 p, u64 i) {
  if (!is_prime(p)) throw InputError("PrimePairColor: p must be prime");
  if (i < 1 || i >= p) throw InputError("PrimePairColor: need 1 <= i < p");
  PrimePairColor c;
  c.bottom = false;
  c.p = p;
  c.i = i;
  return c;
}

std::string PrimePairColor::str() const {
  if (bottom) return "bottom";
  return "(" + std::to_string(p) + "," + std::to_string(i) + ")";
}

u64 color_encode(const PrimePairColor& c) {
  if (c.bottom) return 0;
  u64 code = 1;
  for (u64 q = 2; q < c.p; ++q)
    if (is_prime(q)) code += q - 1;
  return code + (c.i - 1);
}

PrimePairColor color_decode(u64 code) {
  if (code == 0) return PrimePairColor::make_bottom();
  u64 rest = code - 1;
  for (u64 p = 2;; ++p) {
    if (!is_prime(p)) continue;
    if (rest < p - 1) return PrimePairColor::make(p, rest + 1);
    rest -= p - 1;
  }
}

GapCounts gap_counts(const BinNum& x, const OracleTrace& trace) {
  GapCounts gc;
  const auto& exps = x.exponents();
  u64 top = x.mu();
  for (std::size_t i = 0; i + 1 < exps.size(); ++i) {
    GapInfo g;
    g.lo = exps[i];
    g.hi = exps[i + 1];
    for (const auto& [m, t] : trace.entries()) {
      if (m >= g.lo) continue;
      if (t <= g.hi) continue;  // entered early enough, gap not witnessed
      g.is_short = true;
      if (t <= top) g.is_very_short = true;
      if (g.is_very_short) break;
    }
    gc.sg += g.is_short;
    gc.vsg += g.is_very_short;
    gc.gaps.push_back(g);
  }
  return gc;
}

PrimePairColor encode_color(const BinNum& x, const OracleTrace& trace) {
  u64 v = gap_counts(x, trace).vsg;
  if (v == 0) return PrimePairColor::make_bottom();
  u64 p = least_prime_not_dividing(v);
  return PrimePairColor::make(p, v % p);
}

bool has_color(const BinNum& x, const OracleTrace& trace, u64 p, u64 j) {
  if (!is_prime(p)) throw InputError("has_color: p must be prime");
  if (j > p) throw InputError("has_color: need j <= p");
  u64 v = gap_counts(x, trace).vsg;
  if (j >= 1 && j < p) {
    if (v == 0) return false;
    u64 q = least_prime_not_dividing(v);
    return q == p && v % p == j;
  }
  // j in {0, p}: every prime <= p divides vsg; vacuously true at vsg = 0.
  if (v == 0) return true;
  for (u64 q = 2; q <= p; ++q)
    if (is_prime(q) && v % q != 0) return false;
  return true;
}

AbsenceReport almost_absence_report(const NumSet& y, const OracleTrace& trace,
                                    const FsQuery& q) {
  AbsenceReport rep;
  if (y.empty()) return rep;
  NumSet window = fs_enumerate(y, q);
  rep.window_size = window.size();

  u64 max_prime = 2;
  std::vector<std::pair<u64, PrimePairColor>> colored;  // (lambda, color)
  for (const auto& x : window.elements()) {
    PrimePairColor c = encode_color(x, trace);
    if (!c.bottom) max_prime = std::max(max_prime, c.p);
    colored.emplace_back(x.lambda(), c);
    auto& bucket = rep.by_color_code[color_encode(c)];
    bucket.count++;
    bucket.max_lambda = std::max(bucket.max_lambda, x.lambda());
  }
  // (p, 0) buckets: elements whose least non-dividing prime exceeds p
  // (Bottom lands in every bucket).
  for (u64 p = 2; p <= max_prime; ++p) {
    if (!is_prime(p)) continue;
    ColorBucket bucket;
    for (const auto& [lam, c] : colored) {
      if (!c.bottom && c.p <= p) continue;
      bucket.count++;
      bucket.max_lambda = std::max(bucket.max_lambda, lam);
    }
    rep.p0_buckets[p] = bucket;
  }
  return rep;
}

namespace {

NumSet trimmed(const SolutionCandidate& cand) {
  const auto& all = cand.y.elements();
  if (cand.trim >= all.size()) return NumSet();
  return NumSet(std::vector<BinNum>(all.begin() + cand.trim, all.end()));
}

}  // namespace

Verdict verify_candidate(const SolutionCandidate& cand,
                         const OracleTrace& trace, const FsQuery& q) {
  Verdict v;
  NumSet y = trimmed(cand);
  if (y.empty()) {
    v.warnings.push_back("empty window: verdict is vacuous");
    return v;
  }
  if (!is_two_apart(y)) {
    v.pass = false;
    v.violations.push_back({"not-two-apart", "window is not 2-apart"});
    return v;  // fs-window checks are meaningless without apartness
  }

  PrimePairColor witness = color_decode(cand.witness_color);
  if (witness.bottom) {
    v.pass = false;
    v.violations.push_back(
        {"witness-not-prime-color",
         "witness code 0 (bottom) names no prime to divide sg"});
    return v;
  }

  NumSet window = fs_enumerate(y, q);
  for (const auto& x : window.elements()) {
    GapCounts gc = gap_counts(x, trace);
    PrimePairColor c = PrimePairColor::make_bottom();
    if (gc.vsg != 0) {
      u64 p = least_prime_not_dividing(gc.vsg);
      c = PrimePairColor::make(p, gc.vsg % p);
    }
    if (color_encode(c) == cand.witness_color) {
      v.pass = false;
      v.violations.push_back(
          {"witness-color-present",
           "window element has the avoided color " + witness.str()});
    }
    if (gc.sg % witness.p != 0) {
      v.pass = false;
      v.violations.push_back(
          {"divisibility", "sg = " + std::to_string(gc.sg) +
                               " not divisible by " + std::to_string(witness.p)});
    }
  }
  return v;
}

std::optional<u64> least_valid_trim(const SolutionCandidate& cand,
                                    const OracleTrace& trace,
                                    const FsQuery& q) {
  if (cand.y.size() < 2) return std::nullopt;
  for (u64 t = 0; t + 2 <= cand.y.size(); ++t) {
    SolutionCandidate probe = cand;
    probe.trim = t;
    if (verify_candidate(probe, trace, q).pass) return t;
  }
  return std::nullopt;
}

bool decode_membership(u64 n, const SolutionCandidate& cand,
                       const OracleTrace& trace) {
  NumSet y = trimmed(cand);
  {
    // Window must certify the divisibility precondition before decoding.
    FsQuery q(std::max<u64>(y.size(), 1));
    Verdict v = verify_candidate(cand, trace, q);
    if (!v.pass) throw InputError("not a valid solution window");
  }
  // First suitable pair in ascending order: least x with n < mu(x), and
  // its successor.
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if (n < y[i].mu())
      return trace.member_eventually(n, y[i + 1].lambda());
  }
  throw InputError("window exhausted");
}

SolutionCandidate make_solution_candidate(const OracleTrace& trace, u64 floor,
                                          u64 size) {
  // Exponents above both the settle stage and the floor: every fs-window
  // gap then sits above all entry activity, so sg = vsg = 0 throughout and
  // color (2,1) is avoided.
  u64 base = std::max(settle_stage(trace), floor) + 1;
  std::vector<BinNum> elems;
  for (u64 j = 0; j < size; ++j) elems.push_back(BinNum::power_of_two(base + j));
  SolutionCandidate cand;
  cand.y = NumSet(std::move(elems));
  cand.witness_color = color_encode(PrimePairColor::make(2, 1));
  cand.trim = 0;
  return cand;
}

}  // namespace thinht
