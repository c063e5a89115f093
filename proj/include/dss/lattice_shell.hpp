#pragma once

// The 2^n points of Z^k closest to the origin under the p-norm, and how far
// their p-power sum is from the continuum prediction
//
//   sum_{s in A} ||s||_p^p  ~  k/(k+p) * 2^n * R^p,   V_{k,p}(R) = 2^n.
//
// Points are ordered by exact integer p-power norm, ties broken by ascending
// lexicographic coordinate order. Candidates come from the smallest l-inf box
// [-W, W]^k whose inscribed ball already holds 2^n lattice points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dss/errors.hpp"
#include "dss/exact_combinatorics.hpp"
#include "dss/pnorm_geometry.hpp"

namespace dss {

inline constexpr std::uint64_t kDefaultLatticeBudget = std::uint64_t{1} << 22;

using LatticePoint = std::vector<std::int64_t>;

struct LatticeShellSummary {
  unsigned n = 0;
  int k = 1;
  int p = 1;
  BigInt discrete_sum;            // sum of ||s||_p^p over the selected points
  std::uint64_t boundary_norm = 0;  // ||s||_p^p of the farthest selected point
  double r_discrete = 0.0;        // boundary_norm^(1/p)
  double r_continuous = 0.0;      // radius_for_count(n, k, p)
  std::optional<double> lemma_ratio;  // undefined for n = 0
  std::uint64_t candidates = 0;   // box points examined in the final pass
};

namespace detail {

inline std::uint64_t checked_box_size(std::int64_t half_width, int k) {
  const long double side = 2.0L * half_width + 1.0L;
  const long double size = std::pow(side, k);
  if (size > 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(size);
}

// |x|^p for x in [0, W], with overflow guard on k * W^p.
inline std::vector<std::uint64_t> power_table(std::int64_t half_width, int k, int p) {
  const long double top = std::pow(static_cast<long double>(half_width), p) * k;
  if (top >= 9.0e18L) throw std::out_of_range("lattice norms exceed 64-bit range");
  std::vector<std::uint64_t> table(static_cast<std::size_t>(half_width) + 1);
  for (std::int64_t x = 0; x <= half_width; ++x) {
    std::uint64_t v = 1;
    for (int e = 0; e < p; ++e) v *= static_cast<std::uint64_t>(x);
    table[static_cast<std::size_t>(x)] = v;
  }
  return table;
}

// Visit every point of [-W, W]^k in lexicographic order with its p-power norm.
template <class Visitor>
void for_each_box_point(std::int64_t half_width, int k, const std::vector<std::uint64_t>& pw, Visitor&& visit) {
  LatticePoint x(static_cast<std::size_t>(k), -half_width);
  const auto norm_of = [&] {
    std::uint64_t s = 0;
    for (auto c : x) s += pw[static_cast<std::size_t>(c < 0 ? -c : c)];
    return s;
  };
  while (true) {
    visit(static_cast<const LatticePoint&>(x), norm_of());
    int j = k - 1;
    while (j >= 0 && x[static_cast<std::size_t>(j)] == half_width) {
      x[static_cast<std::size_t>(j)] = -half_width;
      --j;
    }
    if (j < 0) return;
    ++x[static_cast<std::size_t>(j)];
  }
}

struct ShellThreshold {
  std::int64_t half_width = 0;
  std::uint64_t boundary_norm = 0;
  std::uint64_t below_count = 0;  // points with norm < boundary_norm
  unsigned __int128 below_sum = 0;
  std::uint64_t candidates = 0;
};

inline void check_shell_args(unsigned n, int k, int p) {
  check_dims(k, p);
  if (n > 62) throw std::invalid_argument("lattice shell requires n <= 62");
}

inline ShellThreshold find_shell_threshold(unsigned n, int k, int p, std::uint64_t budget) {
  check_shell_args(n, k, p);
  const std::uint64_t count = std::uint64_t{1} << n;
  auto half_width = static_cast<std::int64_t>(std::floor(radius_for_count(n, k, p)));
  std::vector<std::uint64_t> norms;
  while (true) {
    const std::uint64_t box = checked_box_size(half_width, k);
    if (box > budget)
      throw ResourceError("lattice enumeration for n=" + std::to_string(n) + " k=" + std::to_string(k) +
                              " p=" + std::to_string(p) + " needs " + std::to_string(box) + " candidate points",
                          budget);
    const auto pw = power_table(half_width, k, p);
    const std::uint64_t cap = pw[static_cast<std::size_t>(half_width)];
    norms.clear();
    for_each_box_point(half_width, k, pw, [&](const LatticePoint&, std::uint64_t norm) {
      if (norm <= cap) norms.push_back(norm);
    });
    if (norms.size() >= count) {
      std::nth_element(norms.begin(), norms.begin() + static_cast<std::ptrdiff_t>(count - 1), norms.end());
      ShellThreshold out;
      out.half_width = half_width;
      out.boundary_norm = norms[count - 1];
      out.candidates = box;
      for (auto v : norms) {
        if (v < out.boundary_norm) {
          ++out.below_count;
          out.below_sum += v;
        }
      }
      return out;
    }
    ++half_width;
  }
}

inline double to_double_u128(unsigned __int128 v) {
  return static_cast<double>(static_cast<long double>(v));
}

inline BigInt to_bigint_u128(unsigned __int128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

}  // namespace detail

inline LatticeShellSummary lattice_shell_enumerate(unsigned n, int k, int p,
                                                   std::uint64_t budget = kDefaultLatticeBudget) {
  const auto th = detail::find_shell_threshold(n, k, p, budget);
  const std::uint64_t count = std::uint64_t{1} << n;
  const unsigned __int128 total =
      th.below_sum + static_cast<unsigned __int128>(count - th.below_count) * th.boundary_norm;

  LatticeShellSummary s;
  s.n = n;
  s.k = k;
  s.p = p;
  s.discrete_sum = detail::to_bigint_u128(total);
  s.boundary_norm = th.boundary_norm;
  s.r_discrete = std::pow(static_cast<double>(th.boundary_norm), 1.0 / p);
  s.r_continuous = radius_for_count(n, k, p);
  s.candidates = th.candidates;
  if (n > 0) {
    double rp = 1.0;
    for (int e = 0; e < p; ++e) rp *= s.r_continuous;
    const double predicted = static_cast<double>(k) / (k + p) * std::ldexp(1.0, static_cast<int>(n)) * rp;
    s.lemma_ratio = detail::to_double_u128(total) / predicted;
  }
  return s;
}

// The selected points themselves, ordered by (norm, lexicographic).
inline std::vector<LatticePoint> lattice_shell_points(unsigned n, int k, int p,
                                                      std::uint64_t budget = kDefaultLatticeBudget) {
  const auto th = detail::find_shell_threshold(n, k, p, budget);
  const std::uint64_t count = std::uint64_t{1} << n;
  const auto pw = detail::power_table(th.half_width, k, p);

  std::vector<std::pair<std::uint64_t, LatticePoint>> inner;
  std::vector<LatticePoint> boundary;
  inner.reserve(th.below_count);
  detail::for_each_box_point(th.half_width, k, pw, [&](const LatticePoint& x, std::uint64_t norm) {
    if (norm < th.boundary_norm)
      inner.emplace_back(norm, x);
    else if (norm == th.boundary_norm)
      boundary.push_back(x);
  });
  // box visit order is already lexicographic, so a stable sort by norm
  // yields the (norm, lex) order
  std::stable_sort(inner.begin(), inner.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<LatticePoint> out;
  out.reserve(count);
  for (auto& [norm, x] : inner) out.push_back(std::move(x));
  boundary.resize(count - th.below_count);
  for (auto& x : boundary) out.push_back(std::move(x));
  return out;
}

// |#{s in Z^k : ||s||_p <= R} - V_{k,p}(R)| / V_{k,p}(R)
inline double lattice_count_check(int k, int p, double radius, std::uint64_t budget = kDefaultLatticeBudget) {
  detail::check_dims(k, p);
  if (!(radius > 0.0)) throw std::invalid_argument("lattice_count_check requires radius > 0");
  const auto half_width = static_cast<std::int64_t>(std::floor(radius));
  const std::uint64_t box = detail::checked_box_size(half_width, k);
  if (box > budget) throw ResourceError("lattice count needs " + std::to_string(box) + " candidate points", budget);
  const auto pw = detail::power_table(half_width, k, p);
  const long double cap = std::pow(static_cast<long double>(radius), p);
  std::uint64_t inside = 0;
  detail::for_each_box_point(half_width, k, pw, [&](const LatticePoint&, std::uint64_t norm) {
    if (static_cast<long double>(norm) <= cap) ++inside;
  });
  const double volume = ball_volume(k, p, radius);
  return std::abs(static_cast<double>(inside) - volume) / volume;
}

}  // namespace dss
