#pragma once

// Moments of X = sum_i eps_i a_i with eps_i = +-1/2 equiprobable.
//
// Internally signs are +-1 so every partial sum is an integer; the 1/2 is
// applied once at the end: E|X_j|^p = sum_v count(v) |v|^p / 2^{n+p}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "dss/errors.hpp"
#include "dss/exact_combinatorics.hpp"
#include "dss/rng.hpp"
#include "dss/sequence.hpp"

namespace dss {

inline constexpr std::uint64_t kDefaultSupportBudget = std::uint64_t{1} << 22;

// Distribution of sum_i s_i a_{ij} over the 2^n sign patterns s in {-1,+1}^n.
struct SignedSumDistribution {
  std::size_t coordinate = 0;
  std::vector<std::pair<std::int64_t, BigInt>> support;  // ascending values, nonzero counts

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [v, c] : support) t += c;
    return t;
  }

  BigInt count(std::int64_t value) const {
    auto it = std::lower_bound(support.begin(), support.end(), value,
                               [](const auto& e, std::int64_t v) { return e.first < v; });
    return it != support.end() && it->first == value ? it->second : BigInt(0);
  }
};

namespace detail {

template <class Count>
std::vector<std::pair<std::int64_t, BigInt>> dense_convolution(std::span<const std::int64_t> coords,
                                                               std::int64_t half_range) {
  const auto width = static_cast<std::size_t>(2 * half_range + 1);
  std::vector<Count> cur(width, Count(0)), next(width, Count(0));
  cur[static_cast<std::size_t>(half_range)] = 1;
  std::int64_t reach = 0;  // current support lies in [-reach, reach]
  for (auto a : coords) {
    const std::int64_t new_reach = reach + a;
    for (std::int64_t v = -new_reach; v <= new_reach; ++v) {
      Count c(0);
      if (v - a >= -reach && v - a <= reach) c += cur[static_cast<std::size_t>(v - a + half_range)];
      if (v + a >= -reach && v + a <= reach) c += cur[static_cast<std::size_t>(v + a + half_range)];
      next[static_cast<std::size_t>(v + half_range)] = c;
    }
    std::swap(cur, next);
    reach = new_reach;
  }
  std::vector<std::pair<std::int64_t, BigInt>> out;
  for (std::int64_t v = -reach; v <= reach; ++v) {
    const auto& c = cur[static_cast<std::size_t>(v + half_range)];
    if (c != 0) out.emplace_back(v, BigInt(c));
  }
  return out;
}

template <class Count>
std::vector<std::pair<std::int64_t, BigInt>> sparse_convolution(std::span<const std::int64_t> coords) {
  std::map<std::int64_t, Count> cur{{0, Count(1)}};
  for (auto a : coords) {
    std::map<std::int64_t, Count> next;
    for (const auto& [v, c] : cur) {
      next[v - a] += c;
      next[v + a] += c;
    }
    cur = std::move(next);
  }
  std::vector<std::pair<std::int64_t, BigInt>> out;
  for (const auto& [v, c] : cur) out.emplace_back(v, BigInt(c));
  return out;
}

}  // namespace detail

// Dense table over [-sum a, sum a]; switches to a sparse map when at most
// 2^n of the table's cells could be occupied and that is below 1/8 of it.
inline SignedSumDistribution signed_sum_distribution(std::span<const std::int64_t> coords,
                                                     std::uint64_t budget = kDefaultSupportBudget,
                                                     std::size_t coordinate = 0) {
  std::int64_t half_range = 0;
  for (auto a : coords) {
    if (a < 0) throw std::invalid_argument("signed_sum_distribution requires nonnegative values");
    half_range += a;
  }
  const std::size_t n = coords.size();
  const long double width = 2.0L * half_range + 1.0L;
  const long double patterns = std::ldexp(1.0L, static_cast<int>(n));
  const bool sparse = patterns * 8.0L < width;
  if (!sparse && width > static_cast<long double>(budget))
    throw ResourceError("signed sum table of width " + std::to_string(static_cast<std::uint64_t>(width)), budget);
  if (sparse && patterns > static_cast<long double>(budget))
    throw ResourceError("signed sum support of up to 2^" + std::to_string(n) + " values", budget);

  SignedSumDistribution d;
  d.coordinate = coordinate;
  const bool narrow = n <= 63;
  if (sparse)
    d.support = narrow ? detail::sparse_convolution<std::uint64_t>(coords) : detail::sparse_convolution<BigInt>(coords);
  else
    d.support = narrow ? detail::dense_convolution<std::uint64_t>(coords, half_range)
                       : detail::dense_convolution<BigInt>(coords, half_range);
  return d;
}

inline std::vector<std::int64_t> coordinate_column(const VectorSequence& s, std::size_t j) {
  std::vector<std::int64_t> col;
  col.reserve(s.n());
  for (const auto& v : s.vectors) col.push_back(v[j]);
  return col;
}

enum class Provenance { exact_dp, closed_form, monte_carlo };

inline std::string_view to_token(Provenance p) {
  switch (p) {
    case Provenance::exact_dp: return "exact_dp";
    case Provenance::closed_form: return "closed_form";
    case Provenance::monte_carlo: return "monte_carlo";
  }
  return "?";
}

// E[||X||_p^p]. Exact paths fill `exact`; Monte Carlo fills std_error
// (absent when samples == 1) and samples.
struct MomentValue {
  double p = 1.0;
  Provenance provenance = Provenance::exact_dp;
  std::optional<Rational> exact;
  double value = 0.0;
  std::optional<double> std_error;
  std::uint64_t samples = 0;
};

namespace detail {

// sum_v count(v) |v|^p
inline BigInt abs_power_mass(const SignedSumDistribution& d, unsigned p) {
  BigInt acc = 0;
  for (const auto& [v, c] : d.support) acc += c * boost::multiprecision::pow(BigInt(v < 0 ? -v : v), p);
  return acc;
}

inline MomentValue exact_value(unsigned p, Rational q, Provenance prov) {
  MomentValue m;
  m.p = p;
  m.provenance = prov;
  m.value = to_double(q);
  m.exact = std::move(q);
  return m;
}

}  // namespace detail

inline MomentValue exact_moment(const VectorSequence& s, unsigned p, std::uint64_t budget = kDefaultSupportBudget) {
  if (p < 1 || p > 3) throw std::invalid_argument("exact_moment supports p in {1, 2, 3}");
  s.validate();
  BigInt mass = 0;
  for (std::size_t j = 0; j < static_cast<std::size_t>(s.k); ++j) {
    const auto col = coordinate_column(s, j);
    mass += detail::abs_power_mass(signed_sum_distribution(col, budget, j), p);
  }
  return detail::exact_value(p, Rational(mass, pow2(static_cast<unsigned>(s.n()) + p)), Provenance::exact_dp);
}

// All n vectors equal to (M, ..., M): k M^p S_p(n) / 2^n.
inline MomentValue extremal_moment(unsigned n, int k, std::int64_t bound, unsigned p) {
  if (p < 1) throw std::invalid_argument("moment order must be >= 1");
  const auto t = scaled_abs_moment_sum(n, p);
  const BigInt mp = boost::multiprecision::pow(BigInt(bound), p);
  return detail::exact_value(p, Rational(BigInt(k) * mp * t.value, pow2(p + n)), Provenance::closed_form);
}

// Mean of ||X||_p^p over `samples` sign vectors drawn from Rng(seed). Sign i
// of a sample is bit (i mod 64) of word floor(i / 64), words drawn in order.
inline MomentValue mc_estimate(const VectorSequence& s, double p, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_estimate requires samples >= 1");
  if (!(p > 0.0)) throw std::invalid_argument("mc_estimate requires p > 0");
  s.validate();
  const std::size_t n = s.n();
  const auto k = static_cast<std::size_t>(s.k);
  const bool integral_p = p == std::floor(p) && p <= 8.0;
  const int int_p = static_cast<int>(p);

  Rng rng(seed);
  std::vector<std::uint64_t> words((n + 63) / 64);
  std::vector<std::int64_t> acc(k);
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t t = 0; t < samples; ++t) {
    for (auto& w : words) w = rng();
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const bool plus = words[i / 64] >> (i % 64) & 1;
      const auto& a = s.vectors[i];
      for (std::size_t j = 0; j < k; ++j) acc[j] += plus ? a[j] : -a[j];
    }
    double x = 0.0;
    for (auto v : acc) {
      const double h = std::abs(static_cast<double>(v)) * 0.5;
      if (integral_p) {
        double term = 1.0;
        for (int e = 0; e < int_p; ++e) term *= h;
        x += term;
      } else {
        x += std::pow(h, p);
      }
    }
    // Welford
    const double delta = x - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (x - mean);
  }
  MomentValue m;
  m.p = p;
  m.provenance = Provenance::monte_carlo;
  m.value = mean;
  m.samples = samples;
  if (samples > 1) m.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return m;
}

struct VarianceCheck {
  bool pass = false;
  Rational moment;    // E||X||_2^2 from the exact DP
  Rational predicted; // (1/4) sum ||a_i||^2
};

inline VarianceCheck variance_identity_check(const VectorSequence& s) {
  VarianceCheck out;
  out.moment = *exact_moment(s, 2).exact;
  BigInt sq = 0;
  for (const auto& v : s.vectors)
    for (auto c : v) sq += BigInt(c) * c;
  out.predicted = Rational(sq, 4);
  out.pass = out.moment == out.predicted;
  return out;
}

enum class ConvexityViolation { midpoint, vertex };

struct ConvexityCounterexample {
  std::vector<std::int64_t> x;
  std::size_t coordinate = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  ConvexityViolation kind = ConvexityViolation::midpoint;
};

struct ConvexityProbeResult {
  bool pass = true;
  std::uint64_t trials = 0;
  std::optional<ConvexityCounterexample> counterexample;
};

inline constexpr unsigned kMaxConvexityLength = 16;

// f(x) = E|sum eps_i x_i|, compared through 2^{n+1} f(x) = sum_v count(v)|v|.
// Per trial: x uniform on {0..M}^n, a coordinate i, and lo, hi with even gap;
// checks f(lo) + f(hi) >= 2 f((lo+hi)/2) and f(x) <= max(f(x_i=0), f(x_i=M)).
inline ConvexityProbeResult convexity_probe(unsigned n, std::int64_t bound, std::uint64_t trials, std::uint64_t seed) {
  if (n < 1 || n > kMaxConvexityLength) throw std::invalid_argument("convexity_probe requires 1 <= n <= 16");
  if (bound < 0) throw std::invalid_argument("convexity_probe requires M >= 0");
  Rng rng(seed);
  const auto scaled_f = [](const std::vector<std::int64_t>& x) {
    return detail::abs_power_mass(signed_sum_distribution(x), 1);
  };
  ConvexityProbeResult out;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<std::int64_t> x(n);
    for (auto& c : x) c = uniform_in(rng, 0, bound);
    const auto i = static_cast<std::size_t>(uniform_below(rng, n));
    const std::int64_t lo = uniform_in(rng, 0, bound);
    // hi shares lo's parity
    const std::int64_t same_parity = (bound - (lo % 2)) / 2;  // count of such values minus one
    const std::int64_t hi = (lo % 2) + 2 * uniform_in(rng, 0, same_parity);
    const std::int64_t mid = (lo + hi) / 2;
    ++out.trials;

    auto at = [&](std::int64_t v) {
      auto y = x;
      y[i] = v;
      return scaled_f(y);
    };
    if (at(lo) + at(hi) < 2 * at(mid)) {
      out.pass = false;
      out.counterexample = ConvexityCounterexample{x, i, lo, hi, ConvexityViolation::midpoint};
      return out;
    }
    const BigInt fx = scaled_f(x);
    if (fx > at(0) && fx > at(bound)) {
      out.pass = false;
      out.counterexample = ConvexityCounterexample{x, i, 0, bound, ConvexityViolation::vertex};
      return out;
    }
  }
  return out;
}

}  // namespace dss
