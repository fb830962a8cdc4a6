#pragma once

// Largeness machinery: a set D is f-large when every settled shifted
// approximant s + E_e^{f(e,k)} meets D in at least k points for all
// sufficiently late s. The splitting operation halves an f-large set into
// two f-hat-large pieces by two-coloring block constraints; iterating the
// split builds the layered hard coloring and its immunity audit.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "thinht/lll.hpp"
#include "thinht/oracle.hpp"

namespace thinht {

struct BinaryFn {
  std::function<u64(u64, u64)> eval;
  std::string description;

  static BinaryFn second_projection();  // f_0(e, k) = k
};

enum class Pairing : int { cantor = 0, rosenberg_strong = 1 };

u64 pair_code(u64 e, u64 k, Pairing p);
std::pair<u64, u64> unpair_code(u64 code, Pairing p);

// Injective binary function with decidable image, built greedily along
// pairing-code order: each value is the least m strictly above all earlier
// values with m >= min_value and k*m <= 2^(m/2). Strict growth along codes
// gives injectivity; image queries replay the construction.
class GFunction {
 public:
  explicit GFunction(u64 min_value, Pairing pairing = Pairing::cantor);

  u64 eval(u64 e, u64 k) const;
  std::optional<std::pair<u64, u64>> image_member(u64 m) const;

  u64 min_value() const { return min_value_; }
  Pairing pairing() const { return pairing_; }

 private:
  void extend_to(u64 code) const;

  u64 min_value_;
  Pairing pairing_;
  mutable std::mutex mutex_;
  mutable std::vector<u64> values_;  // by pairing code
};

// Exact check of k*m <= 2^(m/2), i.e. (k*m)^2 <= 2^m.
bool g_inequality_holds(u64 k, u64 m);

// A set with decidable membership; when decided_below is set, queries at
// or beyond it are contract violations (window honesty), otherwise the
// predicate is total.
struct LargeSet {
  std::function<bool(u64)> predicate;
  std::optional<u64> decided_below;
  std::string description;

  bool contains(u64 n) const;
  std::vector<u64> enumerate_up_to(u64 bound) const;  // members < bound

  static LargeSet naturals();
  static LargeSet evens();
  static LargeSet from_bitmap(std::vector<std::uint8_t> bitmap,
                              std::string description);
};

// Stage s is acceptable for (e, k) iff the shifted approximant
// s + E_e^{f(e, k*g(e,k))}[s] meets D in at least k*g(e,k) points, and any
// earlier shifted copy it intersects carries the identical element set.
// Stages beyond the trace horizon resolve to the settled approximant.
bool acceptable(u64 s, std::size_t e, u64 k, const LargeSet& d,
                const BinaryFn& f, const GFunction& g, const EnumFamily& fam);

// The k consecutive g(e,k)-sized chunks of the ascending listing of
// s + E_e^{f(e, k*g(e,k))}[s]; surplus elements beyond k*g(e,k) are unused.
// Requires acceptable(s, e, k, ...).
std::vector<std::vector<u64>> blocks(u64 s, std::size_t e, u64 k,
                                     const BinaryFn& f, const GFunction& g,
                                     const EnumFamily& fam);

struct SplitParams {
  LllParams lll;
  u64 window = 1024;  // D decidable on [0, window); frontier of the coloring
  u64 k_cap = 2;      // block family truncation: k ranges over [1, k_cap]
  unsigned threads = 1;
};

struct LargenessCounterexample {
  std::size_t e = 0;
  u64 k = 0;
  u64 s = 0;
  int color = 0;
  u64 count = 0;  // observed |D^i meet (s + E)|, below k
};

struct SplitAudit {
  OccurrenceVerdict occurrence;
  std::vector<LargenessCounterexample> counterexamples;
  u64 audited_triples = 0;
  u64 family_size = 0;
  u64 max_block_size = 0;

  bool pass() const {
    return occurrence.pass && counterexamples.empty();
  }
};

struct SplitResult {
  BinaryFn f_hat;  // f_hat(e,k) = f(e, k*g(e,k))
  LargeSet d0, d1;
  std::vector<std::uint8_t> color_bits;  // the two-coloring over the window
  SplitAudit audit;
};

// Builds the family of all blocks over window-contained acceptable stages,
// two-colors it, and splits D by color. The audit then re-checks, for every
// (e, k) pair and every acceptable stage past stabilization whose shifted
// approximant lies inside the window, that both halves meet it in at least
// k points.
SplitResult split(const LargeSet& d, const BinaryFn& f,
                  const std::shared_ptr<const GFunction>& g,
                  const EnumFamily& fam, const SplitParams& params);

struct Layer {
  LargeSet d;
  BinaryFn f;
  std::vector<std::uint8_t> membership;  // of d, over [0, window)
};

struct LayerStack {
  u64 window = 0;
  std::vector<Layer> layers;  // indices 0..depth

  u64 depth() const { return layers.empty() ? 0 : layers.size() - 1; }
  // Largest n <= min(x, depth) with x in D_n; total since D_0 = N.
  u64 c_hard(u64 x) const;
};

struct ColorClassDiff {
  u64 level = 0;
  std::vector<u64> only_in_color_class;  // c_hard = n but outside D_n^0
  std::vector<u64> only_in_d0;           // in D_n^0 but c_hard != n
};

struct IterateResult {
  LayerStack stack;
  std::vector<SplitAudit> audits;           // one per level
  std::vector<ColorClassDiff> class_diffs;  // levels 0..depth-1, capped lists
};

// D_0 = N, f_0(e,k) = k; level n+1 takes the color-1 half and f_hat. The level
// seed mixes the level index into params.lll.seed.
IterateResult iterate(u64 depth, const EnumFamily& fam,
                      const SplitParams& params,
                      const std::shared_ptr<const GFunction>& g);

enum class ImmunityStatus {
  flagged,           // containment refuted: witness (s, x) with c_hard(x+s) = color
  not_contained,     // E is not inside S
  bound_satisfied,   // |W_e| < f_color(e, 1): nothing to check
  inconclusive       // no audited stage available inside the window
};

struct ImmunityEntry {
  std::size_t e = 0;
  ImmunityStatus status = ImmunityStatus::inconclusive;
  u64 required = 0;                            // f_color(e, 1)
  std::optional<std::pair<u64, u64>> witness;  // (s, x)
  std::string note;
};

struct ImmunityVerdict {
  bool any_flagged = false;
  std::vector<ImmunityEntry> entries;
};

// For each trace e with |W_e| >= f_color(e,1) and settled E = E_e^{f_color(e,1)}:
// if E is contained in S, exhibit a late audited stage s and x in E with
// c_hard(x + s) = color, i.e. the sum x + s lands in the avoided class.
ImmunityVerdict immunity_audit(const std::vector<u64>& s_set, u64 color,
                               const LayerStack& stack, const EnumFamily& fam,
                               unsigned threads = 1);

}  // namespace thinht
