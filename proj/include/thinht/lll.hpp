#pragma once

// Constructive local-lemma engine: given a sparse enumerable family of
// finite sets, produce a 2-coloring of an initial segment under which no
// fully contained set is monochromatic, extendable prefix-by-prefix
// without ever touching committed bits.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thinht/common.hpp"

namespace thinht {

// A lazily enumerable sequence of finite sets with an occurrence-listing
// procedure. Families here are finite sequences (set_at returns nullopt
// past the end); the interface stays pull-based so procedural producers
// can defer materialization.
class ConstraintFamily {
 public:
  virtual ~ConstraintFamily() = default;

  // j-th set, sorted ascending; nullopt once the sequence is exhausted.
  virtual std::optional<std::vector<u64>> set_at(std::size_t j) const = 0;

  // All indices j with |F_j| = size and point in F_j.
  virtual std::vector<std::size_t> occurrences(u64 size, u64 point) const = 0;

  virtual u64 min_size() const = 0;
};

class ExplicitFamily : public ConstraintFamily {
 public:
  ExplicitFamily(std::vector<std::vector<u64>> sets, u64 min_size);

  std::optional<std::vector<u64>> set_at(std::size_t j) const override;
  std::vector<std::size_t> occurrences(u64 size, u64 point) const override;
  u64 min_size() const override { return min_size_; }

  std::size_t count() const { return sets_.size(); }
  const std::vector<std::vector<u64>>& sets() const { return sets_; }

 private:
  std::vector<std::vector<u64>> sets_;
  u64 min_size_;
};

struct LllParams {
  double q = 0.5;          // sparsity exponent, in (0,1)
  u64 min_set_size = 13;   // M; the guarantee needs M >= choose_M(q)
  u64 resample_budget = 100000;
  u64 seed = 0;
};

// Committed prefix of a 2-coloring: bits for exactly [0, frontier).
struct PartialColoring {
  std::vector<std::uint8_t> bits;

  u64 frontier() const { return bits.size(); }
};

// Least m0 such that e * 2^(1-m) * (m * 2^(qm) + 1) <= 1 for all m >= m0:
// a set of size m is monochromatic with probability 2^(1-m), and each of
// its m points meets at most 2^(qm) same-size sets. Evaluated in log space;
// the tail is certified by the eventual monotone decrease of the bound.
u64 choose_M(double q);

struct OccurrenceViolation {
  u64 size = 0;
  u64 point = 0;
  std::string detail;
};

struct OccurrenceVerdict {
  bool pass = true;
  std::vector<OccurrenceViolation> violations;
  u64 cells_checked = 0;
};

// Exhaustively checks, for all min_set_size <= m <= m_max and n <= n_max,
// that |occurrences(m, n)| <= 2^(qm) and that the listing matches exactly
// the enumerated sets of size m containing n. Also reports any enumerated
// set smaller than min_set_size.
OccurrenceVerdict occurrence_audit(const ConstraintFamily& fam,
                                   const LllParams& params, u64 m_max,
                                   u64 n_max, unsigned threads = 1);

// Extends `prefix` to [0, new_frontier) so that every enumerated set fully
// contained in [0, new_frontier) is non-monochromatic. Uncommitted bits
// start from a pure hash of (seed, position) — so later extensions see the
// same defaults — and are then resampled Moser-Tardos style, always fixing
// the least-index violated set, until clean or the budget runs out.
// Throws BudgetExceeded (carrying the violated set indices) on exhaustion
// or when a violated set is fully committed and therefore unfixable.
PartialColoring two_color(const ConstraintFamily& fam, const LllParams& params,
                          const PartialColoring& prefix, u64 new_frontier);

// Deterministic generator for audited sparse test families over
// [0, universe): `count` sets with sizes in [min_size, min_size + spread].
// Regenerates on the (rare) draw that fails its own occurrence audit.
ExplicitFamily random_sparse_family(u64 universe, u64 count, u64 min_size,
                                    u64 spread, double q, u64 seed);

}  // namespace thinht
