#pragma once

// Desk-scale exhaustive solvers: thin sets, finite-sums windows
// (exact-2 / up-to-m / full), simultaneous thin sets, the derived sum
// colorings, rainbow sets for 2-bounded pair colorings, and the
// addition-like clause checker. Search order is lexicographic over
// ascending element lists; node budgets distinguish exhaustion ("none")
// from giving up ("unknown").

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thinht/common.hpp"

namespace thinht {

// Colors sums that overflow the universe; never eligible as a witness.
inline constexpr u64 kOverflowColor = u64{1} << 63;

// Total coloring of ascending arity-tuples over [0, universe).
struct FiniteColoring {
  u64 arity = 1;
  u64 universe = 0;
  std::function<u64(const std::vector<u64>&)> eval;
  std::string description;
};

// Candidate witness colors are 0 .. color_limit-1 where color_limit is
// max(2, 1 + largest real color attained anywhere on the universe).
// This keeps "some color absent" meaningful at finite scale: a constant
// coloring still has an absent color, while a parity coloring does not
// admit avoiding colors it never uses.
u64 witness_color_limit(const FiniteColoring& c);
u64 witness_color_limit(const std::vector<FiniteColoring>& cs);

struct ThinWitness {
  std::vector<u64> elements;
  u64 avoided_color = 0;
};

struct SearchStats {
  u64 candidates_tested = 0;
  bool exhausted = false;
};

// Outcome of a budgeted search: found / none (exhausted) / unknown
// (budget ran out first).
template <typename T>
struct SearchOutcome {
  std::optional<T> found;
  bool unknown = false;
  SearchStats stats;

  bool is_none() const { return !found && !unknown; }
};

inline constexpr u64 kNoBudget = ~u64{0};

// Lexicographically least T of the target size with some candidate color
// absent from c on ascending arity-tuples of T; reports the least absent
// color. Budget counts complete candidate sets tested.
SearchOutcome<ThinWitness> find_thin(const FiniteColoring& c, u64 target_size,
                                     u64 budget = kNoBudget);

enum class FsMode { exact2, upto, full };

struct FsWindowQuery {
  FsMode mode = FsMode::exact2;
  u64 upto_terms = 2;  // used when mode == upto
};

struct FsSolution {
  std::vector<u64> elements;
  u64 witness_color = 0;  // avoided color (thin) or the common color (homog)
  bool homogeneous = false;
};

// All sums of distinct elements of S selected by the mode, ascending and
// deduplicated; nullopt when some sum leaves the universe.
std::optional<std::vector<u64>> fs_window(const std::vector<u64>& s,
                                          u64 universe,
                                          const FsWindowQuery& q);

// Lexicographically least S of the target size whose finite-sums window
// stays inside the universe and is thin (some candidate color absent) or
// homogeneous, per `homogeneous`. The unary coloring is applied to sums.
SearchOutcome<FsSolution> find_fs_solution(const FiniteColoring& c,
                                           const FsWindowQuery& q,
                                           bool homogeneous, u64 target_size,
                                           u64 budget = kNoBudget);

// Lexicographically least T of the target size together with a single
// least color avoided by every coloring on its ascending m_i-tuples.
// All universes must agree.
SearchOutcome<ThinWitness> simultaneous_thin(
    const std::vector<FiniteColoring>& colorings, u64 target_size,
    u64 budget = kNoBudget);

// The n derived colorings of arities 1..n mapping an ascending tuple to
// c(sum of its entries); sums leaving the universe get kOverflowColor.
std::vector<FiniteColoring> sum_colorings(const FiniteColoring& c, u64 n);

// Lexicographically least R of the target size on which the 2-bounded
// pair coloring is injective. Throws "not 2-bounded" when some color
// has more than two pairs.
SearchOutcome<std::vector<u64>> rrt_solve(const FiniteColoring& c,
                                          u64 target_size,
                                          u64 budget = kNoBudget);

struct AdditionLike {
  std::function<u64(u64, u64)> eval;          // unordered pair, x != y
  std::function<u64(u64, u64)> escape_bound;  // g(x, n)
  u64 collision_bound = 1;                    // b
  std::string description;
};

struct AdditionLikeViolation {
  int clause = 0;  // 2 or 3
  u64 x = 0, y = 0, n = 0;
  std::string detail;
};

struct AdditionLikeVerdict {
  bool pass = true;
  bool vacuous = false;
  std::vector<AdditionLikeViolation> violations;
};

// Window-sound check of the escape clause (f({x,y}) > n once y exceeds
// g(x,n)) and the collision clause (at most b many z with f({x,z}) equal),
// scanning y and z up to y_scan_bound.
AdditionLikeVerdict addition_like_validate(const AdditionLike& f, u64 x_max,
                                           u64 n_max, u64 y_scan_bound);

// Named coloring generators for experiments and the CLI:
//   const:<k> | mod:<k> | affine:<a>:<b>:<k> | bit:<i> | table-seeded
//   random colorings rand:<k>:<seed> | pair generators sumparity,
//   pairmod:<k>, rainbow:<seed> (2-bounded), rainbow-collide:<seed>.
FiniteColoring make_coloring(const std::string& spec, u64 universe, u64 arity);

}  // namespace thinht
