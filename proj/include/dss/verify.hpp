#pragma once

// Distinct-subset-sums verifier.
//
// A subset sum of an M-bounded sequence of length n has components in
// [0, nM], so it packs without carries into one integer of mixed radix
// base = nM + 1. Packing is linear, which lets a Gray-code walk update the
// packed sum with a single add or subtract per step.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "dss/errors.hpp"
#include "dss/sequence.hpp"

namespace dss {

using u128 = unsigned __int128;

inline constexpr std::size_t kMaxVerifyLength = 30;

// Radix packer for k-vectors with components in [0, base).
template <class Key>
class SubsetPacker {
 public:
  SubsetPacker(std::uint64_t base, int k) : base_(base), k_(k) {}

  Key pack(const Vec& v) const {
    Key key = 0;
    for (int j = k_ - 1; j >= 0; --j) key = key * base_ + static_cast<Key>(v[static_cast<std::size_t>(j)]);
    return key;
  }

  Vec unpack(Key key) const {
    Vec v(static_cast<std::size_t>(k_));
    for (auto& c : v) {
      c = static_cast<std::int64_t>(key % base_);
      key /= base_;
    }
    return v;
  }

  std::uint64_t base() const { return base_; }

 private:
  std::uint64_t base_;
  int k_;
};

enum class PackWidth { narrow, wide };

struct PackLayout {
  std::uint64_t base = 1;
  PackWidth width = PackWidth::narrow;
  long double range = 1;  // base^k
};

inline PackLayout pack_layout(const VectorSequence& s) {
  PackLayout out;
  out.base = static_cast<std::uint64_t>(s.n()) * static_cast<std::uint64_t>(s.bound) + 1;
  out.range = std::pow(static_cast<long double>(out.base), s.k);
  if (out.range <= 1.8e19L)
    out.width = PackWidth::narrow;
  else if (out.range <= 3.4e38L)
    out.width = PackWidth::wide;
  else
    throw ResourceError("packed subset sums need more than 128 bits", 128);
  return out;
}

// Visit all 2^n subsets in reflected Gray-code order as (mask, packed sum).
// The visitor returns false to stop early.
template <class Key, class Visitor>
void gray_walk(const VectorSequence& s, const SubsetPacker<Key>& packer, Visitor&& visit) {
  const std::size_t n = s.n();
  std::vector<Key> packed(n);
  for (std::size_t i = 0; i < n; ++i) packed[i] = packer.pack(s.vectors[i]);
  std::uint64_t mask = 0;
  Key key = 0;
  if (!visit(mask, key)) return;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    const int bit = std::countr_zero(g);
    mask ^= std::uint64_t{1} << bit;
    if (mask >> bit & 1)
      key += packed[static_cast<std::size_t>(bit)];
    else
      key -= packed[static_cast<std::size_t>(bit)];
    if (!visit(mask, key)) return;
  }
}

// Two distinct index sets (0-based) with equal sums; reduced to disjoint sets.
struct Collision {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};

struct VerifyResult {
  bool distinct = true;
  std::optional<Collision> collision;
};

inline std::vector<std::size_t> mask_indices(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i);
  return out;
}

inline Vec subset_sum(const VectorSequence& s, const std::vector<std::size_t>& indices) {
  Vec sum(static_cast<std::size_t>(s.k), 0);
  for (auto i : indices)
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += s.vectors[i][j];
  return sum;
}

namespace detail {

inline constexpr long double kDenseTableLimit = 1 << 24;

struct U128Hash {
  std::size_t operator()(u128 v) const noexcept {
    const auto lo = static_cast<std::uint64_t>(v);
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9E3779B97F4A7C15ULL));
  }
};

inline Collision make_collision(std::uint64_t earlier, std::uint64_t later) {
  const std::uint64_t common = earlier & later;
  return {mask_indices(earlier & ~common), mask_indices(later & ~common)};
}

template <class Key>
VerifyResult verify_packed(const VectorSequence& s, const PackLayout& layout) {
  const SubsetPacker<Key> packer(layout.base, s.k);
  VerifyResult result;
  // seen[key] stores mask + 1 of the first subset reaching that sum
  auto record = [&](auto& seen_lookup) {
    gray_walk(s, packer, [&](std::uint64_t mask, Key key) {
      const std::uint64_t prev = seen_lookup(key, mask);
      if (prev == 0) return true;
      result.distinct = false;
      result.collision = make_collision(prev - 1, mask);
      return false;
    });
  };
  if (layout.range <= kDenseTableLimit) {
    std::vector<std::uint32_t> seen(static_cast<std::size_t>(layout.range), 0);
    auto lookup = [&](Key key, std::uint64_t mask) -> std::uint64_t {
      auto& slot = seen[static_cast<std::size_t>(key)];
      if (slot) return slot;
      slot = static_cast<std::uint32_t>(mask + 1);
      return 0;
    };
    record(lookup);
  } else {
    using Hash = std::conditional_t<std::is_same_v<Key, u128>, U128Hash, std::hash<Key>>;
    std::unordered_map<Key, std::uint32_t, Hash> seen;
    seen.reserve(std::size_t{1} << s.n());
    auto lookup = [&](Key key, std::uint64_t mask) -> std::uint64_t {
      auto [it, inserted] = seen.try_emplace(key, static_cast<std::uint32_t>(mask + 1));
      return inserted ? 0 : it->second;
    };
    record(lookup);
  }
  return result;
}

}  // namespace detail

inline VerifyResult verify_distinct(const VectorSequence& s) {
  s.validate();
  if (s.n() > kMaxVerifyLength)
    throw ResourceError("verify_distinct enumerates 2^n subset sums; n=" + std::to_string(s.n()) + " too large",
                        kMaxVerifyLength);
  if (s.n() == 0) return {};
  const auto layout = pack_layout(s);
  if (layout.width == PackWidth::narrow) return detail::verify_packed<std::uint64_t>(s, layout);
  return detail::verify_packed<u128>(s, layout);
}

}  // namespace dss
