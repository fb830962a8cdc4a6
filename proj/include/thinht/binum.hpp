#pragma once

// Numbers-as-exponent-sets. A positive natural is stored as the strictly
// increasing sequence of its binary exponents; magnitudes are never
// materialized unless they fit a machine word. This is what lets 2-apart
// constructions place bits at positions far beyond 2^64.

#include <functional>
#include <optional>
#include <vector>

#include "thinht/common.hpp"

namespace thinht {

class BinNum {
 public:
  // Exponents must be nonempty and strictly increasing.
  explicit BinNum(std::vector<u64> exponents);

  static BinNum from_value(u64 v);  // v > 0
  static BinNum power_of_two(u64 exponent) { return BinNum({exponent}); }

  const std::vector<u64>& exponents() const { return exps_; }
  u64 lambda() const { return exps_.front(); }  // least exponent
  u64 mu() const { return exps_.back(); }       // greatest exponent

  // Magnitude, when it fits in 64 bits.
  std::optional<u64> value() const;

  bool operator==(const BinNum& o) const { return exps_ == o.exps_; }
  bool operator!=(const BinNum& o) const { return !(*this == o); }
  bool operator<(const BinNum& o) const;  // numeric order
  bool operator>(const BinNum& o) const { return o < *this; }
  bool operator<=(const BinNum& o) const { return !(o < *this); }
  bool operator>=(const BinNum& o) const { return !(*this < o); }

 private:
  std::vector<u64> exps_;
};

// (lambda, mu): least and greatest binary exponent.
std::pair<u64, u64> lambda_mu(const BinNum& x);

// Exact addition with carries. Disjoint exponent sets add as their union.
BinNum add(const BinNum& x, const BinNum& y);

// A finite strictly increasing set of BinNums.
class NumSet {
 public:
  NumSet() = default;
  explicit NumSet(std::vector<BinNum> elements);  // validates ordering

  static NumSet from_values(const std::vector<u64>& values);

  const std::vector<BinNum>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const BinNum& operator[](std::size_t i) const { return elems_[i]; }

  bool operator==(const NumSet& o) const { return elems_ == o.elems_; }

 private:
  std::vector<BinNum> elems_;
};

// Cap on how many distinct summands a finite-sums window may combine,
// plus an optional cap on the resulting values.
struct FsQuery {
  u64 max_terms = 1;  // >= 1
  std::optional<u64> value_bound;  // keep sums with value <= bound

  FsQuery() = default;
  explicit FsQuery(u64 terms, std::optional<u64> bound = std::nullopt);
};

// All sums of between 1 and q.max_terms distinct elements of S,
// deduplicated and ascending. With max_terms = |S| and no bound this is
// the full finite-sums closure of the truncation.
NumSet fs_enumerate(const NumSet& s, const FsQuery& q);

// True iff every consecutive x < y satisfies mu(x) < lambda(y). Sums of
// disjoint subsets of such a set are carry-free.
bool is_two_apart(const NumSet& s);

// Pull-based producer of strictly increasing BinNums; nullopt = exhausted.
using BinNumStream = std::function<std::optional<BinNum>()>;

BinNumStream stream_of(std::vector<BinNum> values);
BinNumStream stream_of_values(const std::vector<u64>& values);

struct ThinResult {
  NumSet elements;                 // 2-apart output
  std::vector<BinNum> consumed;    // stream prefix drawn while building
};

// Extracts `count` 2-apart numbers, each a sum of distinct stream elements
// no two outputs share. Given the previous output's top bit b, it draws
// 2^(b+1)+1 fresh elements, scans prefix-sum pairs (including the empty
// prefix) in lexicographic order for a congruent pair modulo 2^(b+1), and
// emits their difference, which has lambda > b. The first output uses
// modulus 1, i.e. it is the first stream element. Drawn elements not in
// the emitted sum are returned to the front of the stream.
ThinResult thin_to_apart(BinNumStream stream, u64 count);

}  // namespace thinht
