#include "thinht/binum.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <set>

namespace thinht {

BinNum::BinNum(std::vector<u64> exponents) : exps_(std::move(exponents)) {
  if (exps_.empty()) throw InputError("BinNum: empty exponent set");
  for (std::size_t i = 1; i < exps_.size(); ++i)
    if (exps_[i - 1] >= exps_[i])
      throw InputError("BinNum: exponents must be strictly increasing");
}

BinNum BinNum::from_value(u64 v) {
  if (v == 0) throw InputError("BinNum: value must be positive");
  std::vector<u64> e;
  for (u64 i = 0; i < 64; ++i)
    if (v >> i & 1) e.push_back(i);
  return BinNum(std::move(e));
}

std::optional<u64> BinNum::value() const {
  if (mu() >= 64) return std::nullopt;
  u64 v = 0;
  for (u64 e : exps_) v |= u64{1} << e;
  return v;
}

bool BinNum::operator<(const BinNum& o) const {
  // Compare from the top bit down; running out of bits first means smaller.
  auto a = exps_.rbegin(), b = o.exps_.rbegin();
  for (; a != exps_.rend() && b != o.exps_.rend(); ++a, ++b) {
    if (*a != *b) return *a < *b;
  }
  return a == exps_.rend() && b != o.exps_.rend();
}

std::pair<u64, u64> lambda_mu(const BinNum& x) {
  return {x.lambda(), x.mu()};
}

BinNum add(const BinNum& x, const BinNum& y) {
  // Sparse binary addition: tally exponent multiplicities, then push carries
  // upward in ascending order. Counts never exceed 3, so one carry per key.
  std::map<u64, int> bits;
  for (u64 e : x.exponents()) bits[e]++;
  for (u64 e : y.exponents()) bits[e]++;
  for (auto it = bits.begin(); it != bits.end(); ++it) {
    if (it->second >= 2) {
      bits[it->first + 1] += it->second / 2;
      it->second %= 2;
    }
  }
  std::vector<u64> out;
  for (const auto& [e, c] : bits)
    if (c == 1) out.push_back(e);
  return BinNum(std::move(out));
}

NumSet::NumSet(std::vector<BinNum> elements) : elems_(std::move(elements)) {
  for (std::size_t i = 1; i < elems_.size(); ++i)
    if (!(elems_[i - 1] < elems_[i]))
      throw InputError("NumSet: elements must be strictly increasing");
}

NumSet NumSet::from_values(const std::vector<u64>& values) {
  std::vector<BinNum> elems;
  elems.reserve(values.size());
  for (u64 v : values) elems.push_back(BinNum::from_value(v));
  return NumSet(std::move(elems));
}

FsQuery::FsQuery(u64 terms, std::optional<u64> bound)
    : max_terms(terms), value_bound(bound) {
  if (max_terms < 1) throw InputError("FsQuery: max_terms must be >= 1");
}

NumSet fs_enumerate(const NumSet& s, const FsQuery& q) {
  if (s.empty()) throw InputError("empty ground set");
  std::optional<BinNum> bound;
  if (q.value_bound) bound = BinNum::from_value(*q.value_bound);

  std::set<BinNum> sums;
  // DFS over subsets of size 1..max_terms; values can exceed any machine
  // word, so accumulation stays in exponent form throughout.
  std::function<void(std::size_t, u64, const std::optional<BinNum>&)> go =
      [&](std::size_t start, u64 used, const std::optional<BinNum>& acc) {
        if (acc) {
          if (!bound || *acc <= *bound) sums.insert(*acc);
          if (used == q.max_terms) return;
        }
        for (std::size_t i = start; i < s.size(); ++i) {
          go(i + 1, used + 1, acc ? std::optional<BinNum>(add(*acc, s[i]))
                                  : std::optional<BinNum>(s[i]));
        }
      };
  go(0, 0, std::nullopt);
  return NumSet(std::vector<BinNum>(sums.begin(), sums.end()));
}

bool is_two_apart(const NumSet& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1].mu() >= s[i].lambda()) return false;
  return true;
}

BinNumStream stream_of(std::vector<BinNum> values) {
  auto state = std::make_shared<std::pair<std::vector<BinNum>, std::size_t>>(
      std::move(values), 0);
  return [state]() -> std::optional<BinNum> {
    if (state->second >= state->first.size()) return std::nullopt;
    return state->first[state->second++];
  };
}

BinNumStream stream_of_values(const std::vector<u64>& values) {
  std::vector<BinNum> elems;
  elems.reserve(values.size());
  for (u64 v : values) elems.push_back(BinNum::from_value(v));
  return stream_of(std::move(elems));
}

namespace {

// Residue of x modulo 2^m, as the exponent subset below m.
std::vector<u64> low_bits(const BinNum& x, u64 m) {
  std::vector<u64> r;
  for (u64 e : x.exponents()) {
    if (e >= m) break;
    r.push_back(e);
  }
  return r;
}

}  // namespace

ThinResult thin_to_apart(BinNumStream stream, u64 count) {
  ThinResult result;
  std::deque<BinNum> pending;  // drawn but unused, still ascending
  std::vector<BinNum> consumed;
  std::vector<BinNum> out;

  auto draw = [&]() -> std::optional<BinNum> {
    if (!pending.empty()) {
      BinNum v = pending.front();
      pending.pop_front();
      return v;
    }
    auto v = stream();
    if (v) consumed.push_back(*v);
    return v;
  };

  std::optional<u64> prev_mu;
  for (u64 j = 0; j < count; ++j) {
    // Modulus 2^(b+1) with b = mu(previous); the first round uses modulus 1.
    u64 mod_bits = prev_mu ? *prev_mu + 1 : 0;
    if (mod_bits >= 62) throw InputError("thin_to_apart: batch size overflow");
    u64 batch = (u64{1} << mod_bits) + 1;

    std::vector<BinNum> drawn;
    for (u64 i = 0; i < batch; ++i) {
      auto v = draw();
      if (!v) throw InputError("insufficient input");
      drawn.push_back(*v);
    }

    // Prefix sums P_0 = (empty), P_1, ..., P_batch; with batch = 2^(b+1)+1
    // elements there are 2^(b+1)+2 of them, so two share a residue class.
    std::vector<std::optional<BinNum>> prefix(batch + 1);
    for (u64 i = 1; i <= batch; ++i)
      prefix[i] = prefix[i - 1] ? add(*prefix[i - 1], drawn[i - 1])
                                : drawn[i - 1];

    auto residue = [&](u64 i) -> std::vector<u64> {
      if (!prefix[i]) return {};
      return low_bits(*prefix[i], mod_bits);
    };

    bool emitted = false;
    for (u64 i = 0; i <= batch && !emitted; ++i) {
      for (u64 k = i + 1; k <= batch && !emitted; ++k) {
        if (residue(i) != residue(k)) continue;
        // Emit drawn[i..k-1]'s sum; everything else returns to the stream.
        std::optional<BinNum> sum;
        for (u64 t = i; t < k; ++t)
          sum = sum ? add(*sum, drawn[t]) : drawn[t];
        out.push_back(*sum);
        std::deque<BinNum> leftover;
        for (u64 t = 0; t < i; ++t) leftover.push_back(drawn[t]);
        for (u64 t = k; t < batch; ++t) leftover.push_back(drawn[t]);
        for (auto it = leftover.rbegin(); it != leftover.rend(); ++it)
          pending.push_front(*it);
        emitted = true;
      }
    }
    if (!emitted)  // pigeonhole guarantees a pair; guard anyway
      throw InputError("thin_to_apart: no congruent prefix pair");
    prev_mu = out.back().mu();
  }

  result.elements = NumSet(std::move(out));
  result.consumed = std::move(consumed);
  return result;
}

}  // namespace thinht
