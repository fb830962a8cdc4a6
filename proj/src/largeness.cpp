#include "thinht/largeness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace thinht {

BinaryFn BinaryFn::second_projection() {
  return {[](u64, u64 k) { return k; }, "f0(e,k) = k"};
}

u64 pair_code(u64 e, u64 k, Pairing p) {
  if (p == Pairing::cantor) {
    u64 d = e + k;
    return d * (d + 1) / 2 + k;
  }
  u64 m = std::max(e, k);
  return m * m + m + e - k;
}

std::pair<u64, u64> unpair_code(u64 code, Pairing p) {
  if (p == Pairing::cantor) {
    u64 d = 0;
    while ((d + 1) * (d + 2) / 2 <= code) ++d;
    u64 k = code - d * (d + 1) / 2;
    return {d - k, k};
  }
  u64 m = static_cast<u64>(std::sqrt(static_cast<double>(code)));
  while (m * m > code) --m;
  while ((m + 1) * (m + 1) <= code) ++m;
  u64 r = code - m * m;
  if (r <= m) return {r, m};
  return {m, 2 * m - r};
}

bool g_inequality_holds(u64 k, u64 m) {
  if (k == 0) return true;
  unsigned __int128 km = static_cast<unsigned __int128>(k) * m;
  if (km >> 64) return m >= 256;  // (k*m)^2 < 2^256
  u64 km64 = static_cast<u64>(km);
  if (m >= 128) return true;  // (k*m)^2 < 2^128 <= 2^m
  unsigned __int128 sq = static_cast<unsigned __int128>(km64) * km64;
  return sq <= (static_cast<unsigned __int128>(1) << m);
}

GFunction::GFunction(u64 min_value, Pairing pairing)
    : min_value_(min_value), pairing_(pairing) {
  if (min_value_ < 1) throw InputError("GFunction: min_value must be >= 1");
}

void GFunction::extend_to(u64 code) const {
  while (values_.size() <= code) {
    u64 c = values_.size();
    auto [e, k] = unpair_code(c, pairing_);
    (void)e;
    u64 m = values_.empty() ? min_value_ : values_.back() + 1;
    while (!g_inequality_holds(k, m)) ++m;
    values_.push_back(m);
  }
}

u64 GFunction::eval(u64 e, u64 k) const {
  u64 code = pair_code(e, k, pairing_);
  std::lock_guard<std::mutex> lock(mutex_);
  extend_to(code);
  return values_[code];
}

std::optional<std::pair<u64, u64>> GFunction::image_member(u64 m) const {
  std::lock_guard<std::mutex> lock(mutex_);
  // Values grow strictly along codes, so the replay is bounded.
  for (u64 code = 0;; ++code) {
    extend_to(code);
    if (values_[code] == m) return unpair_code(code, pairing_);
    if (values_[code] > m) return std::nullopt;
  }
}

bool LargeSet::contains(u64 n) const {
  if (decided_below && n >= *decided_below)
    throw InputError("LargeSet: query outside decided window");
  return predicate(n);
}

std::vector<u64> LargeSet::enumerate_up_to(u64 bound) const {
  std::vector<u64> out;
  for (u64 n = 0; n < bound; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

LargeSet LargeSet::naturals() {
  return {[](u64) { return true; }, std::nullopt, "N"};
}

LargeSet LargeSet::evens() {
  return {[](u64 n) { return n % 2 == 0; }, std::nullopt, "evens"};
}

LargeSet LargeSet::from_bitmap(std::vector<std::uint8_t> bitmap,
                               std::string description) {
  auto shared = std::make_shared<std::vector<std::uint8_t>>(std::move(bitmap));
  u64 size = shared->size();
  return {[shared](u64 n) { return (*shared)[n] != 0; }, size,
          std::move(description)};
}

namespace {

std::vector<u64> ascending_elements(const Approximant& a) {
  std::vector<u64> v = a.elements;
  std::sort(v.begin(), v.end());
  return v;
}

// Do the shifted sorted sets (s + a) and (t + b) intersect?
bool shifted_overlap(const std::vector<u64>& a, u64 s, const std::vector<u64>& b,
                     u64 t) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    u64 x = a[i] + s, y = b[j] + t;
    if (x == y) return true;
    if (x < y)
      ++i;
    else
      ++j;
  }
  return false;
}

}  // namespace

bool acceptable(u64 s, std::size_t e, u64 k, const LargeSet& d,
                const BinaryFn& f, const GFunction& g, const EnumFamily& fam) {
  u64 gv = g.eval(e, k);
  u64 need = k * gv;
  u64 n_f = f.eval(e, need);
  std::vector<u64> es = ascending_elements(approximant_eventual(fam, e, n_f, s));

  u64 hits = 0;
  for (u64 x : es)
    if (d.contains(s + x) && ++hits >= need) break;
  if (hits < need) return false;

  for (u64 t = 0; t < s; ++t) {
    std::vector<u64> et =
        ascending_elements(approximant_eventual(fam, e, n_f, t));
    if (et == es) continue;
    if (shifted_overlap(es, s, et, t)) return false;
  }
  return true;
}

std::vector<std::vector<u64>> blocks(u64 s, std::size_t e, u64 k,
                                     const BinaryFn& f, const GFunction& g,
                                     const EnumFamily& fam) {
  u64 gv = g.eval(e, k);
  u64 n_f = f.eval(e, k * gv);
  std::vector<u64> es = ascending_elements(approximant_eventual(fam, e, n_f, s));
  if (es.size() < k * gv)
    throw InputError("blocks: approximant smaller than k*g(e,k)");

  std::vector<std::vector<u64>> out;
  for (u64 j = 0; j < k; ++j) {
    std::vector<u64> block;
    for (u64 i = 0; i < gv; ++i) block.push_back(s + es[j * gv + i]);
    out.push_back(std::move(block));
  }
  return out;
}

namespace {

// Per-(e, k) stage tables shared by the family builder and the audit.
struct PairTables {
  std::size_t e = 0;
  u64 k = 0;
  u64 g_value = 0;
  u64 n_f = 0;          // f(e, k*g(e,k)); also f_hat(e, k)
  u64 horizon = 0;
  u64 stabilization = 0;
  std::vector<std::vector<u64>> by_stage;  // ascending elements, stages 0..horizon
  std::vector<bool> equals_limit;          // by_stage[t] == limit set

  const std::vector<u64>& at(u64 s) const {
    return by_stage[std::min(s, horizon)];
  }
};

PairTables build_tables(std::size_t e, u64 k, const BinaryFn& f,
                        const GFunction& g, const EnumFamily& fam) {
  PairTables t;
  t.e = e;
  t.k = k;
  t.g_value = g.eval(e, k);
  t.n_f = f.eval(e, k * t.g_value);
  t.horizon = fam.trace(e).horizon();
  t.by_stage.reserve(t.horizon + 1);
  for (u64 s = 0; s <= t.horizon; ++s)
    t.by_stage.push_back(ascending_elements(approximant(fam, e, t.n_f, s)));
  auto [limit, stab] = stable_approximant(fam, e, t.n_f);
  t.stabilization = stab;
  std::vector<u64> limit_sorted = ascending_elements(limit);
  t.equals_limit.resize(t.horizon + 1);
  for (u64 s = 0; s <= t.horizon; ++s)
    t.equals_limit[s] = (t.by_stage[s] == limit_sorted);
  return t;
}

// Windowed acceptability: the whole shifted approximant must lie inside
// [0, window) so D-membership is decided everywhere it is consulted.
bool acceptable_in_window(const PairTables& t, u64 s, const LargeSet& d,
                          u64 window) {
  const std::vector<u64>& es = t.at(s);
  if (es.empty() || s + es.back() >= window) return false;
  u64 need = t.k * t.g_value;
  u64 hits = 0;
  for (u64 x : es)
    if (d.contains(s + x) && ++hits >= need) break;
  if (hits < need) return false;

  // Stages at or beyond the horizon all carry the settled set; only
  // earlier differing stages can break the no-overlap condition.
  u64 explicit_range = std::min(s, t.horizon);
  bool s_is_limit = s >= t.horizon ? true : t.equals_limit[s];
  for (u64 u = 0; u < explicit_range; ++u) {
    if (s_is_limit && t.equals_limit[u]) continue;
    if (t.by_stage[u] == t.at(s)) continue;
    if (shifted_overlap(t.at(s), s, t.by_stage[u], u)) return false;
  }
  return true;
}

class BlocksFamily : public ConstraintFamily {
 public:
  BlocksFamily(std::vector<std::vector<u64>> sets, u64 min_size)
      : sets_(std::move(sets)), min_size_(min_size) {
    for (std::size_t j = 0; j < sets_.size(); ++j)
      for (u64 n : sets_[j]) index_[{sets_[j].size(), n}].push_back(j);
  }

  std::optional<std::vector<u64>> set_at(std::size_t j) const override {
    if (j >= sets_.size()) return std::nullopt;
    return sets_[j];
  }

  std::vector<std::size_t> occurrences(u64 size, u64 point) const override {
    auto it = index_.find({size, point});
    if (it == index_.end()) return {};
    return it->second;
  }

  u64 min_size() const override { return min_size_; }

  std::size_t count() const { return sets_.size(); }

 private:
  std::vector<std::vector<u64>> sets_;
  std::map<std::pair<u64, u64>, std::vector<std::size_t>> index_;
  u64 min_size_;
};

}  // namespace

SplitResult split(const LargeSet& d, const BinaryFn& f,
                  const std::shared_ptr<const GFunction>& g,
                  const EnumFamily& fam, const SplitParams& params) {
  const u64 window = params.window;
  if (window == 0) throw InputError("split: empty window");

  // Stage tables for every (e, k) whose blocks can fit inside the window.
  std::vector<PairTables> tables;
  for (std::size_t e = 0; e < fam.size(); ++e) {
    for (u64 k = 1; k <= params.k_cap; ++k) {
      u64 gv = g->eval(e, k);
      if (k * gv > window) continue;
      if (f.eval(e, k * gv) > window) continue;  // approximant can never fit
      tables.push_back(build_tables(e, k, f, *g, fam));
    }
  }

  // Collect block constraints in fixed (e, k, s, j) order.
  std::vector<std::vector<u64>> block_sets;
  u64 max_block = 0;
  for (const auto& t : tables) {
    for (u64 s = 0; s < window; ++s) {
      if (!acceptable_in_window(t, s, d, window)) continue;
      const std::vector<u64>& es = t.at(s);
      for (u64 j = 0; j < t.k; ++j) {
        std::vector<u64> block;
        block.reserve(t.g_value);
        for (u64 i = 0; i < t.g_value; ++i)
          block.push_back(s + es[j * t.g_value + i]);
        max_block = std::max<u64>(max_block, block.size());
        block_sets.push_back(std::move(block));
      }
    }
  }

  BlocksFamily family(std::move(block_sets), params.lll.min_set_size);

  SplitResult result;
  result.audit.family_size = family.count();
  result.audit.max_block_size = max_block;
  result.audit.occurrence = occurrence_audit(
      family, params.lll, std::max(max_block, params.lll.min_set_size),
      window - 1, params.threads);

  PartialColoring coloring =
      two_color(family, params.lll, PartialColoring{}, window);
  result.color_bits = coloring.bits;

  std::vector<std::uint8_t> bm0(window, 0), bm1(window, 0);
  for (u64 n = 0; n < window; ++n) {
    if (!d.contains(n)) continue;
    (coloring.bits[n] ? bm1 : bm0)[n] = 1;
  }
  result.d0 = LargeSet::from_bitmap(std::move(bm0), d.description + "^0");
  result.d1 = LargeSet::from_bitmap(std::move(bm1), d.description + "^1");

  BinaryFn parent = f;
  std::shared_ptr<const GFunction> gf = g;
  result.f_hat = {
      [parent, gf](u64 e, u64 k) { return parent.eval(e, k * gf->eval(e, k)); },
      "(" + f.description + ")^"};

  // Largeness audit: each audited stage is acceptable, past stabilization,
  // and window-contained; both halves must then meet the shifted settled
  // approximant in at least k points.
  for (const auto& t : tables) {
    std::vector<u64> candidates;
    for (u64 s = t.stabilization; s < window; ++s)
      if (acceptable_in_window(t, s, d, window)) candidates.push_back(s);
    result.audit.audited_triples += candidates.size();

    std::function<std::vector<LargenessCounterexample>(std::size_t)> check =
        [&](std::size_t idx) {
          u64 s = candidates[idx];
          const std::vector<u64>& es = t.at(s);
          u64 c0 = 0, c1 = 0;
          for (u64 x : es) {
            if (!d.contains(s + x)) continue;
            (coloring.bits[s + x] ? c1 : c0)++;
          }
          std::vector<LargenessCounterexample> bad;
          if (c0 < t.k) bad.push_back({t.e, t.k, s, 0, c0});
          if (c1 < t.k) bad.push_back({t.e, t.k, s, 1, c1});
          return bad;
        };
    auto results = parallel_map<std::vector<LargenessCounterexample>>(
        candidates.size(), params.threads, check);
    for (auto& r : results)
      for (auto& ce : r) result.audit.counterexamples.push_back(ce);
  }
  return result;
}

u64 LayerStack::c_hard(u64 x) const {
  if (x >= window) throw InputError("c_hard: outside window");
  u64 best = 0;
  u64 top = std::min<u64>(x, depth());
  for (u64 n = 0; n <= top; ++n)
    if (layers[n].membership[x]) best = n;
  return best;
}

IterateResult iterate(u64 depth, const EnumFamily& fam,
                      const SplitParams& params,
                      const std::shared_ptr<const GFunction>& g) {
  if (depth < 1) throw InputError("iterate: depth must be >= 1");
  const u64 window = params.window;

  IterateResult result;
  result.stack.window = window;

  LargeSet d = LargeSet::naturals();
  BinaryFn f = BinaryFn::second_projection();
  {
    Layer base;
    base.d = d;
    base.f = f;
    base.membership.assign(window, 1);
    result.stack.layers.push_back(std::move(base));
  }

  for (u64 level = 0; level < depth; ++level) {
    SplitParams level_params = params;
    level_params.lll.seed = splitmix64(params.lll.seed ^ (level + 1));
    SplitResult sr = split(d, f, g, fam, level_params);
    result.audits.push_back(sr.audit);

    Layer next;
    next.d = sr.d1;
    next.f = sr.f_hat;
    next.membership.resize(window);
    for (u64 n = 0; n < window; ++n) next.membership[n] = sr.d1.contains(n);
    result.stack.layers.push_back(std::move(next));

    d = result.stack.layers.back().d;
    f = result.stack.layers.back().f;
  }

  // Per level, how far the color class c_hard^{-1}(n) sits from D_n \ D_{n+1}.
  constexpr std::size_t kDiffCap = 64;
  for (u64 n = 0; n < depth; ++n) {
    ColorClassDiff diff;
    diff.level = n;
    for (u64 x = 0; x < window; ++x) {
      bool in_class = result.stack.c_hard(x) == n;
      bool in_d0 = result.stack.layers[n].membership[x] &&
                   !result.stack.layers[n + 1].membership[x];
      if (in_class && !in_d0 && diff.only_in_color_class.size() < kDiffCap)
        diff.only_in_color_class.push_back(x);
      if (in_d0 && !in_class && diff.only_in_d0.size() < kDiffCap)
        diff.only_in_d0.push_back(x);
    }
    result.class_diffs.push_back(std::move(diff));
  }
  return result;
}

ImmunityVerdict immunity_audit(const std::vector<u64>& s_set, u64 color,
                               const LayerStack& stack, const EnumFamily& fam,
                               unsigned threads) {
  if (color >= stack.layers.size())
    throw InputError("immunity_audit: color beyond stack depth");
  const BinaryFn& fn = stack.layers[color].f;

  std::vector<u64> sorted_s = s_set;
  std::sort(sorted_s.begin(), sorted_s.end());
  auto in_s = [&](u64 x) {
    return std::binary_search(sorted_s.begin(), sorted_s.end(), x);
  };

  std::function<ImmunityEntry(std::size_t)> audit_one =
      [&](std::size_t e) -> ImmunityEntry {
    ImmunityEntry entry;
    entry.e = e;
    entry.required = fn.eval(e, 1);
    const OracleTrace& tr = fam.trace(e);
    if (tr.entries().size() < entry.required) {
      entry.status = ImmunityStatus::bound_satisfied;
      entry.note = "|W_e| < required bound";
      return entry;
    }
    auto [limit, stab] = stable_approximant(fam, e, entry.required);
    std::vector<u64> elems = limit.elements;
    std::sort(elems.begin(), elems.end());
    if (stab > stack.window || elems.empty() ||
        elems.back() + stab >= stack.window) {
      entry.status = ImmunityStatus::inconclusive;
      entry.note = "no audited stage inside window";
      return entry;
    }
    bool contained = true;
    for (u64 x : elems)
      if (!in_s(x)) {
        contained = false;
        break;
      }
    if (!contained) {
      entry.status = ImmunityStatus::not_contained;
      return entry;
    }
    // Prefer the latest witness: scan stages downward to stabilization.
    u64 s_max = stack.window - 1 - elems.back();
    for (u64 s = s_max;; --s) {
      for (u64 x : elems) {
        if (stack.c_hard(x + s) == color) {
          entry.status = ImmunityStatus::flagged;
          entry.witness = std::make_pair(s, x);
          return entry;
        }
      }
      if (s == stab) break;
    }
    entry.status = ImmunityStatus::inconclusive;
    entry.note = "containment holds but no witness stage found in window";
    return entry;
  };

  ImmunityVerdict verdict;
  auto entries =
      parallel_map<ImmunityEntry>(fam.size(), threads, audit_one);
  for (auto& e : entries) {
    verdict.any_flagged = verdict.any_flagged || e.status == ImmunityStatus::flagged;
    verdict.entries.push_back(std::move(e));
  }
  return verdict;
}

}  // namespace thinht
