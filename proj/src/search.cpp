#include "thinht/search.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace thinht {

namespace {

// Visits ascending size-r subsets of [0, universe) in lexicographic order;
// stops early when visit returns false.
void for_each_combination(u64 universe, u64 r,
                          const std::function<bool(const std::vector<u64>&)>& visit) {
  if (r == 0 || r > universe) return;
  std::vector<u64> idx(r);
  for (u64 i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    if (!visit(idx)) return;
    bool advanced = false;
    for (u64 i = r; i-- > 0;) {
      if (idx[i] < universe - r + i) {  // position i still has slack
        ++idx[i];
        for (u64 j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

void for_each_tuple(const std::vector<u64>& base, u64 arity,
                    const std::function<void(const std::vector<u64>&)>& visit) {
  if (arity == 0 || arity > base.size()) return;
  std::vector<u64> pick(arity);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t start,
                                                         std::size_t depth) {
    if (depth == arity) {
      visit(pick);
      return;
    }
    for (std::size_t i = start; i + (arity - depth - 1) < base.size(); ++i) {
      pick[depth] = base[i];
      go(i + 1, depth + 1);
    }
  };
  go(0, 0);
}

}  // namespace

u64 witness_color_limit(const FiniteColoring& c) {
  u64 max_color = 0;
  std::vector<u64> all(c.universe);
  for (u64 i = 0; i < c.universe; ++i) all[i] = i;
  for_each_tuple(all, c.arity, [&](const std::vector<u64>& t) {
    u64 v = c.eval(t);
    if (v != kOverflowColor) max_color = std::max(max_color, v);
  });
  return std::max<u64>(2, max_color + 1);
}

u64 witness_color_limit(const std::vector<FiniteColoring>& cs) {
  u64 limit = 2;
  for (const auto& c : cs) limit = std::max(limit, witness_color_limit(c));
  return limit;
}

SearchOutcome<ThinWitness> find_thin(const FiniteColoring& c, u64 target_size,
                                     u64 budget) {
  SearchOutcome<ThinWitness> out;
  if (c.arity < 1) throw InputError("find_thin: arity must be >= 1");
  u64 limit = witness_color_limit(c);
  for_each_combination(c.universe, target_size, [&](const std::vector<u64>& t) {
    if (out.stats.candidates_tested >= budget) {
      out.unknown = true;
      return false;
    }
    out.stats.candidates_tested++;
    std::vector<bool> attained(limit, false);
    for_each_tuple(t, c.arity, [&](const std::vector<u64>& tup) {
      u64 v = c.eval(tup);
      if (v < limit) attained[v] = true;
    });
    for (u64 j = 0; j < limit; ++j) {
      if (!attained[j]) {
        out.found = ThinWitness{t, j};
        return false;
      }
    }
    return true;
  });
  if (!out.found && !out.unknown) out.stats.exhausted = true;
  return out;
}

std::optional<std::vector<u64>> fs_window(const std::vector<u64>& s,
                                          u64 universe,
                                          const FsWindowQuery& q) {
  u64 max_terms;
  u64 min_terms = 1;
  switch (q.mode) {
    case FsMode::exact2:
      min_terms = max_terms = 2;
      break;
    case FsMode::upto:
      max_terms = q.upto_terms;
      break;
    default:
      max_terms = s.size();
  }
  max_terms = std::min<u64>(max_terms, s.size());

  std::set<u64> sums;
  bool overflow = false;
  std::function<void(std::size_t, u64, u64)> go = [&](std::size_t start,
                                                      u64 used, u64 acc) {
    if (overflow) return;
    if (used >= min_terms) {
      if (acc >= universe) {
        overflow = true;
        return;
      }
      sums.insert(acc);
    }
    if (used == max_terms) return;
    for (std::size_t i = start; i < s.size() && !overflow; ++i)
      go(i + 1, used + 1, acc + s[i]);
  };
  go(0, 0, 0);
  if (overflow) return std::nullopt;
  return std::vector<u64>(sums.begin(), sums.end());
}

SearchOutcome<FsSolution> find_fs_solution(const FiniteColoring& c,
                                           const FsWindowQuery& q,
                                           bool homogeneous, u64 target_size,
                                           u64 budget) {
  if (c.arity != 1) throw InputError("find_fs_solution: coloring must be unary");
  SearchOutcome<FsSolution> out;
  u64 limit = witness_color_limit(c);
  for_each_combination(c.universe, target_size, [&](const std::vector<u64>& s) {
    if (out.stats.candidates_tested >= budget) {
      out.unknown = true;
      return false;
    }
    out.stats.candidates_tested++;
    auto window = fs_window(s, c.universe, q);
    if (!window) return true;  // sums leave the universe
    if (homogeneous) {
      std::optional<u64> common;
      bool ok = true;
      for (u64 v : *window) {
        u64 col = c.eval({v});
        if (!common)
          common = col;
        else if (*common != col) {
          ok = false;
          break;
        }
      }
      if (ok && common) {
        out.found = FsSolution{s, *common, true};
        return false;
      }
      return true;
    }
    std::vector<bool> attained(limit, false);
    for (u64 v : *window) {
      u64 col = c.eval({v});
      if (col < limit) attained[col] = true;
    }
    for (u64 j = 0; j < limit; ++j) {
      if (!attained[j]) {
        out.found = FsSolution{s, j, false};
        return false;
      }
    }
    return true;
  });
  if (!out.found && !out.unknown) out.stats.exhausted = true;
  return out;
}

SearchOutcome<ThinWitness> simultaneous_thin(
    const std::vector<FiniteColoring>& colorings, u64 target_size,
    u64 budget) {
  if (colorings.empty())
    throw InputError("simultaneous_thin: need at least one coloring");
  u64 universe = colorings[0].universe;
  for (const auto& c : colorings)
    if (c.universe != universe)
      throw InputError("simultaneous_thin: universes differ");

  SearchOutcome<ThinWitness> out;
  u64 limit = witness_color_limit(colorings);
  for_each_combination(universe, target_size, [&](const std::vector<u64>& t) {
    if (out.stats.candidates_tested >= budget) {
      out.unknown = true;
      return false;
    }
    out.stats.candidates_tested++;
    std::vector<bool> attained(limit, false);
    for (const auto& c : colorings) {
      for_each_tuple(t, c.arity, [&](const std::vector<u64>& tup) {
        u64 v = c.eval(tup);
        if (v < limit) attained[v] = true;
      });
    }
    for (u64 j = 0; j < limit; ++j) {
      if (!attained[j]) {
        out.found = ThinWitness{t, j};
        return false;
      }
    }
    return true;
  });
  if (!out.found && !out.unknown) out.stats.exhausted = true;
  return out;
}

std::vector<FiniteColoring> sum_colorings(const FiniteColoring& c, u64 n) {
  if (c.arity != 1) throw InputError("sum_colorings: coloring must be unary");
  if (n < 1) throw InputError("sum_colorings: n must be >= 1");
  std::vector<FiniteColoring> out;
  for (u64 arity = 1; arity <= n; ++arity) {
    FiniteColoring d;
    d.arity = arity;
    d.universe = c.universe;
    d.description = c.description + " on " + std::to_string(arity) + "-sums";
    u64 universe = c.universe;
    auto base = c.eval;
    d.eval = [base, universe](const std::vector<u64>& tup) -> u64 {
      u64 sum = 0;
      for (u64 v : tup) sum += v;
      if (sum >= universe) return kOverflowColor;
      return base({sum});
    };
    out.push_back(std::move(d));
  }
  return out;
}

SearchOutcome<std::vector<u64>> rrt_solve(const FiniteColoring& c,
                                          u64 target_size, u64 budget) {
  if (c.arity != 2) throw InputError("rrt_solve: coloring must be binary");
  // Validate 2-boundedness over the whole universe.
  std::map<u64, u64> uses;
  for (u64 i = 0; i < c.universe; ++i)
    for (u64 j = i + 1; j < c.universe; ++j)
      if (++uses[c.eval({i, j})] > 2) throw InputError("not 2-bounded");

  SearchOutcome<std::vector<u64>> out;
  for_each_combination(c.universe, target_size, [&](const std::vector<u64>& r) {
    if (out.stats.candidates_tested >= budget) {
      out.unknown = true;
      return false;
    }
    out.stats.candidates_tested++;
    std::set<u64> seen;
    bool injective = true;
    for (std::size_t i = 0; i < r.size() && injective; ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j)
        if (!seen.insert(c.eval({r[i], r[j]})).second) {
          injective = false;
          break;
        }
    if (injective) {
      out.found = r;
      return false;
    }
    return true;
  });
  if (!out.found && !out.unknown) out.stats.exhausted = true;
  return out;
}

AdditionLikeVerdict addition_like_validate(const AdditionLike& f, u64 x_max,
                                           u64 n_max, u64 y_scan_bound) {
  AdditionLikeVerdict verdict;
  if (x_max == 0) {
    verdict.vacuous = true;
    return verdict;
  }
  for (u64 x = 0; x <= x_max; ++x) {
    for (u64 n = 0; n <= n_max; ++n) {
      u64 g = f.escape_bound(x, n);
      for (u64 y = g + 1; y <= y_scan_bound; ++y) {
        if (y == x) continue;
        if (f.eval(x, y) <= n) {
          verdict.pass = false;
          verdict.violations.push_back(
              {2, x, y, n, "f(x,y) <= n beyond the escape bound"});
        }
      }
    }
    // Collision clause within the scan window.
    std::map<u64, u64> hits;
    for (u64 z = 0; z <= y_scan_bound; ++z) {
      if (z == x) continue;
      hits[f.eval(x, z)]++;
    }
    for (const auto& [value, count] : hits) {
      if (count > f.collision_bound) {
        verdict.pass = false;
        verdict.violations.push_back(
            {3, x, 0, value,
             std::to_string(count) + " collisions at value " +
                 std::to_string(value)});
      }
    }
  }
  return verdict;
}

FiniteColoring make_coloring(const std::string& spec, u64 universe,
                             u64 arity) {
  std::vector<std::string> parts;
  {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
  }
  if (parts.empty()) throw InputError("make_coloring: empty spec");
  const std::string& kind = parts[0];
  auto num = [&](std::size_t i) -> u64 {
    if (i >= parts.size())
      throw InputError("make_coloring: missing parameter in '" + spec + "'");
    return std::stoull(parts[i]);
  };

  FiniteColoring c;
  c.universe = universe;
  c.arity = arity;
  c.description = spec;

  auto tuple_sum = [](const std::vector<u64>& t) {
    u64 s = 0;
    for (u64 v : t) s += v;
    return s;
  };

  if (kind == "const") {
    u64 k = num(1);
    c.eval = [k](const std::vector<u64>&) { return k; };
  } else if (kind == "mod") {
    u64 k = num(1);
    if (k == 0) throw InputError("make_coloring: mod 0");
    c.eval = [k, tuple_sum](const std::vector<u64>& t) {
      return tuple_sum(t) % k;
    };
  } else if (kind == "affine") {
    u64 a = num(1), b = num(2), k = num(3);
    if (k == 0) throw InputError("make_coloring: affine mod 0");
    c.eval = [a, b, k, tuple_sum](const std::vector<u64>& t) {
      return (a * tuple_sum(t) + b) % k;
    };
  } else if (kind == "bit") {
    u64 i = num(1);
    c.eval = [i, tuple_sum](const std::vector<u64>& t) {
      return (tuple_sum(t) >> i) & 1;
    };
  } else if (kind == "rand") {
    u64 k = num(1), seed = num(2);
    if (k == 0) throw InputError("make_coloring: rand with 0 colors");
    c.eval = [k, seed, tuple_sum, arity](const std::vector<u64>& t) {
      u64 h = splitmix64(seed ^ (arity * 0x632BE59BD9B4E019ULL));
      for (u64 v : t) h = splitmix64(h ^ (v + 0x9E3779B97F4A7C15ULL));
      (void)tuple_sum;
      return h % k;
    };
  } else if (kind == "rainbow") {
    // Injective pair coloring: the lexicographic pair index.
    if (arity != 2) throw InputError("make_coloring: rainbow needs arity 2");
    u64 n = universe;
    c.eval = [n](const std::vector<u64>& t) {
      u64 i = t[0], j = t[1];
      return i * n + j;
    };
  } else if (kind == "rainbow-collide") {
    // Injective except one planted collision between two disjoint pairs:
    // {0,1} and {2,3} share a color.
    if (arity != 2) throw InputError("make_coloring: rainbow-collide needs arity 2");
    if (universe < 4)
      throw InputError("make_coloring: rainbow-collide needs universe >= 4");
    u64 n = universe;
    c.eval = [n](const std::vector<u64>& t) {
      u64 i = t[0], j = t[1];
      if (i == 2 && j == 3) return u64{0 * n + 1};
      return i * n + j;
    };
  } else {
    throw InputError("make_coloring: unknown generator '" + kind + "'");
  }
  return c;
}

}  // namespace thinht
