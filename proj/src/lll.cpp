#include "thinht/lll.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace thinht {

ExplicitFamily::ExplicitFamily(std::vector<std::vector<u64>> sets,
                               u64 min_size)
    : sets_(std::move(sets)), min_size_(min_size) {
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() < min_size_)
      throw InputError("ExplicitFamily: set smaller than min_size");
  }
}

std::optional<std::vector<u64>> ExplicitFamily::set_at(std::size_t j) const {
  if (j >= sets_.size()) return std::nullopt;
  return sets_[j];
}

std::vector<std::size_t> ExplicitFamily::occurrences(u64 size,
                                                     u64 point) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < sets_.size(); ++j) {
    if (sets_[j].size() != size) continue;
    if (std::binary_search(sets_[j].begin(), sets_[j].end(), point))
      out.push_back(j);
  }
  return out;
}

namespace {

// log2 of e * 2^(1-m) * (m * 2^(qm) + 1), computed without overflow.
double log2_bound(double q, u64 m) {
  double md = static_cast<double>(m);
  // log2(m * 2^(qm) + 1) via log-sum of the two terms
  double a = std::log2(md) + q * md;    // log2(m * 2^(qm))
  double inner = a + std::log2(1.0 + std::exp2(-a));
  return std::log2(std::exp(1.0)) + 1.0 - md + inner;
}

}  // namespace

u64 choose_M(double q) {
  if (!(q > 0.0 && q < 1.0)) throw InputError("choose_M: need q in (0,1)");
  // The bound decreases monotonically once (m+1)/m < 2^(1-q); past that
  // point the first m with bound <= 1 closes the tail.
  u64 m_dec = static_cast<u64>(std::ceil(1.0 / (std::exp2(1.0 - q) - 1.0))) + 2;
  u64 last_violation = 1;
  for (u64 m = 2;; ++m) {
    bool ok = log2_bound(q, m) <= 0.0;
    if (!ok) last_violation = m;
    if (m >= m_dec && ok) break;
  }
  return last_violation + 1;
}

namespace {

// Largest integer count allowed through one point for size-m sets.
bool count_within_bound(u64 count, double q, u64 m) {
  if (count == 0) return true;
  return std::log2(static_cast<double>(count)) <=
         q * static_cast<double>(m) + 1e-9;
}

struct MaterializedFamily {
  std::vector<std::vector<u64>> sets;
};

MaterializedFamily materialize(const ConstraintFamily& fam) {
  MaterializedFamily m;
  for (std::size_t j = 0;; ++j) {
    auto s = fam.set_at(j);
    if (!s) break;
    m.sets.push_back(std::move(*s));
  }
  return m;
}

}  // namespace

OccurrenceVerdict occurrence_audit(const ConstraintFamily& fam,
                                   const LllParams& params, u64 m_max,
                                   u64 n_max, unsigned threads) {
  OccurrenceVerdict verdict;
  MaterializedFamily mat = materialize(fam);

  // Ground-truth index rebuilt from the enumeration alone.
  std::map<std::pair<u64, u64>, std::vector<std::size_t>> truth;
  for (std::size_t j = 0; j < mat.sets.size(); ++j) {
    const auto& s = mat.sets[j];
    if (s.size() < fam.min_size())
      verdict.violations.push_back(
          {static_cast<u64>(s.size()), 0,
           "enumerated set " + std::to_string(j) + " smaller than min_size"});
    for (u64 n : s)
      if (n <= n_max) truth[{s.size(), n}].push_back(j);
  }

  u64 m_lo = params.min_set_size;
  if (m_max < m_lo) {
    verdict.pass = verdict.violations.empty();
    return verdict;
  }
  u64 m_count = m_max - m_lo + 1;
  std::size_t cells = static_cast<std::size_t>(m_count) * (n_max + 1);
  verdict.cells_checked = cells;

  std::function<std::vector<OccurrenceViolation>(std::size_t)> check_cell =
      [&](std::size_t idx) -> std::vector<OccurrenceViolation> {
    u64 m = m_lo + idx / (n_max + 1);
    u64 n = idx % (n_max + 1);
    std::vector<OccurrenceViolation> out;
    std::vector<std::size_t> listed = fam.occurrences(m, n);
    std::sort(listed.begin(), listed.end());
    auto it = truth.find({m, n});
    const std::vector<std::size_t> empty;
    const auto& expect = it == truth.end() ? empty : it->second;
    if (listed != expect)
      out.push_back({m, n, "occurrence listing disagrees with enumeration"});
    if (!count_within_bound(listed.size(), params.q, m))
      out.push_back({m, n,
                     std::to_string(listed.size()) + " sets exceed 2^(qm)"});
    return out;
  };

  auto results = parallel_map<std::vector<OccurrenceViolation>>(
      cells, threads, check_cell);
  for (auto& r : results)
    for (auto& v : r) verdict.violations.push_back(std::move(v));
  verdict.pass = verdict.violations.empty();
  return verdict;
}

namespace {

inline bool seeded_default_bit(u64 seed, u64 n) {
  return splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (n + 1))) & 1;
}

}  // namespace

PartialColoring two_color(const ConstraintFamily& fam, const LllParams& params,
                          const PartialColoring& prefix, u64 new_frontier) {
  if (new_frontier < prefix.frontier())
    throw InputError("two_color: frontier may not shrink");

  PartialColoring out;
  out.bits.resize(new_frontier);
  for (u64 n = 0; n < prefix.frontier(); ++n) out.bits[n] = prefix.bits[n];
  for (u64 n = prefix.frontier(); n < new_frontier; ++n)
    out.bits[n] = seeded_default_bit(params.seed, n);

  // Only sets fully inside the frontier are constraints at this stage.
  MaterializedFamily mat = materialize(fam);
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < mat.sets.size(); ++j) {
    const auto& s = mat.sets[j];
    if (!s.empty() && s.back() < new_frontier) active.push_back(j);
  }

  auto monochromatic = [&](const std::vector<u64>& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (out.bits[s[i]] != out.bits[s[0]]) return false;
    return !s.empty();
  };

  auto violated_sets = [&]() {
    std::vector<std::size_t> v;
    for (std::size_t j : active)
      if (monochromatic(mat.sets[j])) v.push_back(j);
    return v;
  };

  Rng resampler(params.seed ^ 0xD1B54A32D192ED03ULL);
  u64 budget = params.resample_budget;
  for (;;) {
    // Least-index violated set.
    std::optional<std::size_t> target;
    for (std::size_t j : active) {
      if (monochromatic(mat.sets[j])) {
        target = j;
        break;
      }
    }
    if (!target) break;
    if (budget == 0) throw BudgetExceeded("budget exceeded", violated_sets());
    --budget;
    bool any_free = false;
    for (u64 n : mat.sets[*target])
      if (n >= prefix.frontier()) {
        out.bits[n] = resampler.bit();
        any_free = true;
      }
    if (!any_free)
      throw BudgetExceeded("budget exceeded: violated set is fully committed",
                           violated_sets());
  }
  return out;
}

ExplicitFamily random_sparse_family(u64 universe, u64 count, u64 min_size,
                                    u64 spread, double q, u64 seed) {
  for (u64 attempt = 0;; ++attempt) {
    Rng rng(splitmix64(seed + attempt * 0x9E3779B97F4A7C15ULL));
    std::vector<std::vector<u64>> sets;
    for (u64 j = 0; j < count; ++j) {
      u64 size = min_size + rng.below(spread + 1);
      std::set<u64> pts;
      while (pts.size() < size) pts.insert(rng.below(universe));
      sets.emplace_back(pts.begin(), pts.end());
    }
    ExplicitFamily fam(std::move(sets), min_size);
    LllParams p;
    p.q = q;
    p.min_set_size = min_size;
    if (occurrence_audit(fam, p, min_size + spread, universe - 1).pass)
      return fam;
  }
}

}  // namespace thinht
