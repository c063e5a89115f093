#pragma once

// Exhaustive search for the smallest M admitting a distinct subset sum
// sequence of length n in Z^k.
//
// M is raised one step at a time. Each level is a depth-first search over
// canonical sequences: vectors strictly increasing in lexicographic order,
// and for k >= 2 the sequence must be the lexicographically least among its
// coordinate-permuted (and re-sorted) variants. A branch is cut as soon as
// the prefix's subset sums collide. Canonical sequences satisfy
// sort_ascending(a_i) >= a_1 for every i, which is checked on every node;
// full permutation minimality is checked at the leaves.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dss/errors.hpp"
#include "dss/sequence.hpp"

namespace dss {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;
inline constexpr int kMaxSearchDimension = 4;

struct SearchOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
  unsigned threads = 1;
};

struct SearchOutcome {
  unsigned n = 0;
  int k = 1;
  std::int64_t m_min = 0;  // best known when !exhaustive
  VectorSequence witness;
  bool exhaustive = false;
  std::int64_t lower_bound = 1;  // every M < lower_bound was refuted
  std::uint64_t nodes = 0;
};

// Round-robin over coordinates; the j-th vector placed on a coordinate has
// value 2^j there and 0 elsewhere. M = 2^{ceil(n/k) - 1}.
inline VectorSequence baseline_construction(unsigned n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("baseline_construction requires n, k >= 1");
  if ((n + k - 1) / k > 62) throw std::invalid_argument("baseline_construction: 2^{ceil(n/k)-1} overflows");
  VectorSequence s;
  s.k = k;
  for (unsigned i = 0; i < n; ++i) {
    Vec v(static_cast<std::size_t>(k), 0);
    v[i % static_cast<unsigned>(k)] = std::int64_t{1} << (i / static_cast<unsigned>(k));
    s.vectors.push_back(std::move(v));
  }
  s.bound = std::int64_t{1} << ((n + k - 1) / k - 1);
  return s;
}

namespace detail {

inline bool next_permutation_index(std::vector<int>& perm) { return std::next_permutation(perm.begin(), perm.end()); }

// True when the (sorted) sequence is lexicographically least among all of
// its coordinate-permuted, re-sorted variants.
inline bool is_permutation_canonical(const std::vector<Vec>& seq, int k) {
  if (k < 2) return true;
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) perm[static_cast<std::size_t>(j)] = j;
  std::vector<Vec> variant(seq.size(), Vec(static_cast<std::size_t>(k)));
  while (next_permutation_index(perm)) {
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (int j = 0; j < k; ++j)
        variant[i][static_cast<std::size_t>(j)] = seq[i][static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
    std::sort(variant.begin(), variant.end());
    if (variant < seq) return false;
  }
  return true;
}

class LevelSearch {
 public:
  LevelSearch(unsigned n, int k, std::int64_t bound) : n_(n), k_(k), bound_(bound) {
    base_ = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(bound) + 1;
    const long double range = std::pow(static_cast<long double>(base_), k);
    if (range > (1 << 28)) throw ResourceError("search sum table too large", 1 << 28);
    range_ = static_cast<std::size_t>(range);

    Vec v(static_cast<std::size_t>(k), 0);
    while (advance(v)) {  // skips the zero vector
      candidates_.push_back(v);
      Vec asc = v;
      std::sort(asc.begin(), asc.end());
      ascending_.push_back(std::move(asc));
      std::uint64_t key = 0;
      for (int j = k - 1; j >= 0; --j) key = key * base_ + static_cast<std::uint64_t>(v[static_cast<std::size_t>(j)]);
      keys_.push_back(key);
    }
  }

  std::size_t root_count() const {
    return candidates_.size() >= n_ ? candidates_.size() - n_ + 1 : 0;
  }

  struct RootResult {
    std::optional<std::vector<std::size_t>> found;
    std::uint64_t nodes = 0;
    bool capped = false;
    bool cancelled = false;
  };

  // DFS of the subtree whose first vector is candidates_[root].
  RootResult run_root(std::size_t root, std::uint64_t cap, const std::atomic<std::size_t>* best_root) const {
    Worker w{*this, cap, best_root, root, {}, {}, {}, {}};
    w.run();
    return w.result;
  }

  VectorSequence sequence_of(const std::vector<std::size_t>& picks) const {
    VectorSequence s;
    s.k = k_;
    s.bound = bound_;
    for (auto i : picks) s.vectors.push_back(candidates_[i]);
    return s;
  }

 private:
  bool advance(Vec& v) const {
    for (int j = k_ - 1; j >= 0; --j) {
      auto& c = v[static_cast<std::size_t>(j)];
      if (c < bound_) {
        ++c;
        return true;
      }
      c = 0;
    }
    return false;
  }

  struct Worker {
    const LevelSearch& level;
    std::uint64_t cap;
    const std::atomic<std::size_t>* best_root;
    std::size_t root;
    RootResult result;
    std::vector<std::uint64_t> sums;
    std::vector<std::uint8_t> seen;
    std::vector<std::size_t> picks;
    bool stop = false;

    void run() {
      sums.assign(std::size_t{1} << level.n_, 0);
      seen.assign(level.range_, 0);
      seen[0] = 1;
      if (level.k_ >= 2 && level.ascending_[root] != level.candidates_[root]) return;
      if (!tick()) return;
      place(root, 0);
      if (level.n_ == 1) {
        result.found = picks;
        return;
      }
      descend(1, root + 1);
    }

    bool tick() {
      ++result.nodes;
      if (result.nodes > cap) {
        result.capped = true;
        stop = true;
      } else if (best_root && (result.nodes & 4095) == 0 && best_root->load(std::memory_order_relaxed) < root) {
        result.cancelled = true;
        stop = true;
      }
      return !stop;
    }

    // Adds candidate idx at the given depth if no collision; returns success.
    bool place(std::size_t idx, unsigned depth) {
      const std::size_t have = std::size_t{1} << depth;
      const std::uint64_t key = level.keys_[idx];
      for (std::size_t j = 0; j < have; ++j)
        if (seen[static_cast<std::size_t>(sums[j] + key)]) return false;
      for (std::size_t j = 0; j < have; ++j) {
        sums[have + j] = sums[j] + key;
        seen[static_cast<std::size_t>(sums[have + j])] = 1;
      }
      picks.push_back(idx);
      return true;
    }

    void unplace(unsigned depth) {
      const std::size_t have = std::size_t{1} << depth;
      for (std::size_t j = 0; j < have; ++j) seen[static_cast<std::size_t>(sums[have + j])] = 0;
      picks.pop_back();
    }

    void descend(unsigned depth, std::size_t start) {
      const std::size_t count = level.candidates_.size();
      const Vec& first = level.candidates_[picks.front()];
      for (std::size_t idx = start; idx + (level.n_ - depth) <= count; ++idx) {
        if (!tick()) return;
        if (level.k_ >= 2 && level.ascending_[idx] < first) continue;
        if (!place(idx, depth)) continue;
        if (depth + 1 == level.n_) {
          std::vector<Vec> seq;
          for (auto i : picks) seq.push_back(level.candidates_[i]);
          if (is_permutation_canonical(seq, level.k_)) {
            result.found = picks;
            stop = true;
            return;
          }
        } else {
          descend(depth + 1, idx + 1);
          if (stop) return;
        }
        unplace(depth);
      }
    }
  };

  unsigned n_;
  int k_;
  std::int64_t bound_;
  std::uint64_t base_ = 1;
  std::size_t range_ = 1;
  std::vector<Vec> candidates_;
  std::vector<Vec> ascending_;
  std::vector<std::uint64_t> keys_;
};

struct LevelOutcome {
  std::optional<VectorSequence> witness;
  std::uint64_t nodes = 0;
  bool budget_exhausted = false;
};

// Result is independent of the thread count: roots are merged in order and
// only roots after the first success are ever cancelled.
inline LevelOutcome search_level(unsigned n, int k, std::int64_t bound, std::uint64_t budget, unsigned threads) {
  const LevelSearch level(n, k, bound);
  const std::size_t roots = level.root_count();
  std::vector<LevelSearch::RootResult> results(roots);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{roots};

  auto work = [&] {
    for (std::size_t r = next.fetch_add(1); r < roots; r = next.fetch_add(1)) {
      if (best.load() < r) continue;
      results[r] = level.run_root(r, budget, &best);
      if (results[r].found) {
        std::size_t cur = best.load();
        while (r < cur && !best.compare_exchange_weak(cur, r)) {
        }
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  LevelOutcome out;
  for (std::size_t r = 0; r < roots; ++r) {
    out.nodes += results[r].nodes;
    if (out.nodes > budget) {
      out.budget_exhausted = true;
      out.nodes = budget;
      return out;
    }
    if (results[r].found) {
      out.witness = level.sequence_of(*results[r].found);
      return out;
    }
  }
  return out;
}

}  // namespace detail

inline SearchOutcome min_m_search(unsigned n, int k, const SearchOptions& options = {}) {
  if (n < 1) throw std::invalid_argument("min_m_search requires n >= 1");
  if (k < 1 || k > kMaxSearchDimension) throw std::invalid_argument("min_m_search supports 1 <= k <= 4");
  const VectorSequence baseline = baseline_construction(n, k);

  SearchOutcome out;
  out.n = n;
  out.k = k;
  for (std::int64_t bound = 1; bound <= baseline.bound; ++bound) {
    const auto level = detail::search_level(n, k, bound, options.node_budget - out.nodes, options.threads);
    out.nodes += level.nodes;
    if (level.budget_exhausted) {
      out.lower_bound = bound;
      out.m_min = baseline.bound;
      out.witness = baseline;
      out.exhaustive = false;
      return out;
    }
    if (level.witness) {
      out.lower_bound = bound;
      out.m_min = bound;
      out.witness = *level.witness;
      out.exhaustive = true;
      return out;
    }
  }
  // unreachable in practice: the baseline bound is always feasible
  out.lower_bound = out.m_min = baseline.bound;
  out.witness = baseline;
  out.exhaustive = false;
  return out;
}

}  // namespace dss
