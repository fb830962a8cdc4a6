#pragma once

// Shared plumbing: error types, a portable seeded RNG, deterministic
// parallel mapping, and small hashing helpers.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace thinht {

using u64 = std::uint64_t;

// Input/contract violations (bad files, bad arguments, horizon breaches).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A search or resampling loop ran out of its explicit budget. Carries the
// indices of constraint sets still violated when the budget ran out.
struct BudgetExceeded : std::runtime_error {
  std::vector<std::size_t> violating_sets;
  explicit BudgetExceeded(const std::string& msg,
                          std::vector<std::size_t> sets = {})
      : std::runtime_error(msg), violating_sets(std::move(sets)) {}
};

// splitmix64: tiny, fully specified, identical on every platform. We avoid
// std::uniform_int_distribution because its output is implementation-defined.
inline u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(u64 seed) : state_(seed) {}

  u64 next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    u64 z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Modulo bias is irrelevant at the scales used here.
  u64 below(u64 n) { return n == 0 ? 0 : next() % n; }

  bool bit() { return next() & 1; }

 private:
  u64 state_;
};

// FNV-1a, used for config hashes in reports.
inline u64 fnv1a64(const std::string& s) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_hex(u64 v);

// Runs fn(i) for i in [0, n) on `threads` workers and returns the results
// indexed by i. The merge is by index, so the output is independent of
// scheduling; this is what keeps audits byte-stable across thread counts.
template <typename R>
std::vector<R> parallel_map(std::size_t n, unsigned threads,
                            const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace thinht
