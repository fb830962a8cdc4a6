#include "thinht/oracle.hpp"

#include <algorithm>
#include <set>

namespace thinht {

OracleTrace::OracleTrace(std::vector<std::pair<u64, u64>> entries, u64 horizon)
    : entries_(std::move(entries)), horizon_(horizon) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0 && entries_[i - 1].first == entries_[i].first)
      throw InputError("OracleTrace: duplicate element");
    if (entries_[i].second > horizon_)
      throw InputError("OracleTrace: entry stage beyond horizon");
  }
}

std::optional<u64> OracleTrace::entry_stage(u64 m) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(),
                             std::make_pair(m, u64{0}));
  if (it != entries_.end() && it->first == m) return it->second;
  return std::nullopt;
}

bool OracleTrace::member_at(u64 m, u64 s) const {
  if (s > horizon_) throw InputError("stage beyond trace horizon");
  auto t = entry_stage(m);
  return t && *t <= s;
}

u64 OracleTrace::max_element() const {
  u64 m = 0;
  for (const auto& [elem, stage] : entries_) m = std::max(m, elem);
  return m;
}

u64 settle_stage(const OracleTrace& trace) {
  u64 s = 0;
  for (const auto& [elem, stage] : trace.entries()) s = std::max(s, stage);
  return s;
}

const OracleTrace& EnumFamily::trace(std::size_t e) const {
  if (e >= traces_.size()) throw InputError("EnumFamily: index out of range");
  return traces_[e];
}

Approximant approximant(const EnumFamily& fam, std::size_t e, u64 n, u64 s) {
  const OracleTrace& tr = fam.trace(e);
  if (s > tr.horizon()) throw InputError("stage beyond trace horizon");

  // Entry-time order: monotone traces make "least t with x present on all
  // of [t, s]" collapse to the entry stage itself.
  std::vector<std::pair<u64, u64>> present;  // (t_x, x)
  for (const auto& [elem, stage] : tr.entries())
    if (stage <= s) present.emplace_back(stage, elem);
  std::sort(present.begin(), present.end());

  Approximant a;
  a.e = e;
  a.n = n;
  a.s = s;
  if (present.size() < n) {
    a.fallback = true;
    for (u64 i = 0; i < n; ++i) a.elements.push_back(i);
  } else {
    for (u64 i = 0; i < n; ++i) a.elements.push_back(present[i].second);
  }
  return a;
}

Approximant approximant_eventual(const EnumFamily& fam, std::size_t e, u64 n,
                                 u64 s) {
  return approximant(fam, e, n, std::min(s, fam.trace(e).horizon()));
}

std::pair<Approximant, u64> stable_approximant(const EnumFamily& fam,
                                               std::size_t e, u64 n) {
  const OracleTrace& tr = fam.trace(e);
  Approximant limit = approximant(fam, e, n, tr.horizon());
  u64 from = tr.horizon();
  while (from > 0 && approximant(fam, e, n, from - 1).same_set(limit))
    --from;
  return {limit, from};
}

OracleTrace random_trace(u64 count, u64 max_element, u64 max_stage, Rng& rng) {
  if (count > max_element + 1)
    throw InputError("random_trace: not enough distinct elements");
  std::set<u64> chosen;
  while (chosen.size() < count) chosen.insert(rng.below(max_element + 1));
  std::vector<std::pair<u64, u64>> entries;
  for (u64 m : chosen) entries.emplace_back(m, rng.below(max_stage + 1));
  return OracleTrace(std::move(entries), max_stage);
}

}  // namespace thinht
