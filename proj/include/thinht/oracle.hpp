#pragma once

// Staged enumerations standing in for a halting-problem-style oracle and
// its stagewise approximations. Traces are finite and explicit: membership
// is monotone in the stage, every entry stage lies at or below the horizon,
// so every limit notion below is decidable by construction.

#include <optional>
#include <utility>
#include <vector>

#include "thinht/common.hpp"

namespace thinht {

class OracleTrace {
 public:
  OracleTrace() = default;
  // entries: (element, entry stage); at most one entry per element.
  OracleTrace(std::vector<std::pair<u64, u64>> entries, u64 horizon);

  const std::vector<std::pair<u64, u64>>& entries() const { return entries_; }
  u64 horizon() const { return horizon_; }

  // Entry stage of m, if m ever appears.
  std::optional<u64> entry_stage(u64 m) const;

  // True iff m is enumerated at or before stage s. Stages beyond the
  // horizon are an error, not a silent truncation.
  bool member_at(u64 m, u64 s) const;

  // Final membership (the trace is total, so the limit is known).
  bool member_final(u64 m) const { return entry_stage(m).has_value(); }

  // member_at with the stage clamped to the horizon. Valid because all
  // entries lie at or below the horizon: for s >= horizon the stagewise
  // answer equals final membership.
  bool member_eventually(u64 m, u64 s) const {
    return member_at(m, std::min(s, horizon_));
  }

  u64 max_element() const;  // 0 for an empty trace

 private:
  std::vector<std::pair<u64, u64>> entries_;  // sorted by element
  u64 horizon_ = 0;
};

// Least stage from which the trace no longer changes (max entry stage,
// 0 for an empty trace).
u64 settle_stage(const OracleTrace& trace);

// An indexed family of staged enumerations.
class EnumFamily {
 public:
  EnumFamily() = default;
  explicit EnumFamily(std::vector<OracleTrace> traces)
      : traces_(std::move(traces)) {}

  const OracleTrace& trace(std::size_t e) const;
  std::size_t size() const { return traces_.size(); }
  const std::vector<OracleTrace>& traces() const { return traces_; }

 private:
  std::vector<OracleTrace> traces_;
};

// The n least elements of W_e at stage s under the entry-time order
// (entry stage first, value second), or the fallback [0, n) when fewer
// than n elements have appeared. `elements` is kept in that order.
struct Approximant {
  std::size_t e = 0;
  u64 n = 0;
  u64 s = 0;
  std::vector<u64> elements;
  bool fallback = false;

  bool same_set(const Approximant& o) const {
    return elements == o.elements && fallback == o.fallback;
  }
};

Approximant approximant(const EnumFamily& fam, std::size_t e, u64 n, u64 s);

// approximant with the stage clamped to the trace horizon; exact for
// s >= horizon because traces are total.
Approximant approximant_eventual(const EnumFamily& fam, std::size_t e, u64 n,
                                 u64 s);

// The limit approximant together with the least stage from which it is
// constant up to the horizon. Finite traces always stabilize.
std::pair<Approximant, u64> stable_approximant(const EnumFamily& fam,
                                               std::size_t e, u64 n);

// Deterministic random trace: `count` distinct elements <= max_element,
// entry stages uniform in [0, max_stage], horizon = max_stage.
OracleTrace random_trace(u64 count, u64 max_element, u64 max_stage, Rng& rng);

}  // namespace thinht
