#pragma once

// Lower bounds on M for an M-bounded distinct subset sum sequence in Z^k,
// each of the form  M >= (1 + o(1)) c(k) 2^{n/k} / sqrt(n).
//
//   first moment   c(k) = sqrt(pi/2) (k!)^{1/k} / (k + 1)
//   third moment   c(k) = (pi/8)^{1/6} Gamma((k+3)/3)^{1/k} / ((k+3)^{1/3} Gamma(4/3))
//   variance       c(k) = sqrt(4 / (pi (k + 2))) Gamma(k/2 + 1)^{1/k}
//
// The finite-n forms substitute the exact binomial sums for their Stirling
// asymptotics. They are heuristic: the lattice-side estimate they rest on
// still carries an unquantified (1 + o(1)).

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dss/exact_combinatorics.hpp"
#include "dss/gamma.hpp"
#include "dss/pnorm_geometry.hpp"

namespace dss {

// Declaration order is the tie-break order (lower moment order first).
enum class Method { first_moment, variance, third_moment };

inline constexpr std::array<Method, 3> kAllMethods = {Method::first_moment, Method::third_moment, Method::variance};

inline std::string_view to_token(Method m) {
  switch (m) {
    case Method::first_moment: return "first_moment";
    case Method::third_moment: return "third_moment";
    case Method::variance: return "variance";
  }
  return "?";
}

inline std::optional<Method> method_from_token(std::string_view token) {
  for (auto m : kAllMethods)
    if (to_token(m) == token) return m;
  return std::nullopt;
}

inline int moment_order(Method m) {
  switch (m) {
    case Method::first_moment: return 1;
    case Method::variance: return 2;
    case Method::third_moment: return 3;
  }
  return 0;
}

namespace detail {
inline void check_k(int k) {
  if (k < 1) throw std::invalid_argument("dimension k must be >= 1");
}
// Gamma(x)^{1/k}, through the log when Gamma(x) would overflow
inline double gamma_root(double x, int k) {
  return x <= 171.0 ? std::pow(gamma_fn(x), 1.0 / k) : std::exp(log_gamma_fn(x) / k);
}
}  // namespace detail

inline double coeff_first(int k) {
  detail::check_k(k);
  return std::sqrt(std::numbers::pi / 2.0) * detail::gamma_root(k + 1.0, k) / (k + 1.0);
}

inline double coeff_third(int k) {
  detail::check_k(k);
  return std::pow(std::numbers::pi / 8.0, 1.0 / 6.0) * detail::gamma_root((k + 3.0) / 3.0, k) /
         (std::cbrt(k + 3.0) * gamma_fn(4.0 / 3.0));
}

inline double coeff_variance(int k) {
  detail::check_k(k);
  return std::sqrt(4.0 / (std::numbers::pi * (k + 2.0))) * detail::gamma_root(k / 2.0 + 1.0, k);
}

inline double coefficient(Method m, int k) {
  switch (m) {
    case Method::first_moment: return coeff_first(k);
    case Method::third_moment: return coeff_third(k);
    case Method::variance: return coeff_variance(k);
  }
  throw std::invalid_argument("unknown method");
}

struct BoundReport {
  Method method = Method::first_moment;
  int k = 1;
  std::optional<unsigned> n;
  double coefficient = 0.0;
  std::optional<double> asymptotic_bound;  // coefficient * 2^{n/k} / sqrt(n)
  std::optional<double> finite_bound;      // heuristic; first/third moment only
};

// first:  R 2^n / ((k+1) n C(n-1, floor((n-1)/2))),      R = radius_for_count(n, k, 1)
inline double finite_bound_first(unsigned n, int k) {
  const Rational ratio(pow2(n), BigInt(k + 1) * n * binomial(n - 1, (n - 1) / 2));
  return radius_for_count(n, k, 1) * to_double(ratio);
}

// third:  R (2^{n+3} / ((k+3) T_3(n)))^{1/3},            R = radius_for_count(n, k, 3)
inline double finite_bound_third(unsigned n, int k) {
  const Rational ratio(pow2(n + 3), BigInt(k + 3) * scaled_abs_moment_sum(n, 3).value);
  return radius_for_count(n, k, 3) * std::cbrt(to_double(ratio));
}

inline BoundReport lower_bound_m(unsigned n, int k, Method method) {
  if (n < 1) throw std::invalid_argument("sequence length n must be >= 1");
  detail::check_k(k);
  BoundReport r;
  r.method = method;
  r.k = k;
  r.n = n;
  r.coefficient = coefficient(method, k);
  r.asymptotic_bound = r.coefficient * std::exp2(static_cast<double>(n) / k) / std::sqrt(static_cast<double>(n));
  if (method == Method::first_moment) r.finite_bound = finite_bound_first(n, k);
  if (method == Method::third_moment) r.finite_bound = finite_bound_third(n, k);
  return r;
}

inline BoundReport lower_bound_m(unsigned n, int k, std::string_view method_token) {
  const auto m = method_from_token(method_token);
  if (!m) throw std::invalid_argument("unknown method token '" + std::string(method_token) + "'");
  return lower_bound_m(n, k, *m);
}

struct MethodComparison {
  Method best = Method::first_moment;
  double c_first = 0.0;
  double c_third = 0.0;
  double c_variance = 0.0;
};

inline Method argmax_method(double c_first, double c_third, double c_variance) {
  // strict comparisons keep ties on the lower moment order
  Method best = Method::first_moment;
  double top = c_first;
  if (c_variance > top) {
    best = Method::variance;
    top = c_variance;
  }
  if (c_third > top) best = Method::third_moment;
  return best;
}

inline MethodComparison best_method(int k) {
  MethodComparison c;
  c.c_first = coeff_first(k);
  c.c_third = coeff_third(k);
  c.c_variance = coeff_variance(k);
  c.best = argmax_method(c.c_first, c.c_third, c.c_variance);
  return c;
}

// Commonly stated regime boundaries
// (k <= 4 first, 4 < k <= 6 third, k > 6 variance). Reported next to the
// computed argmax, never used to choose it.
inline Method stated_regime(int k) {
  if (k <= 4) return Method::first_moment;
  if (k <= 6) return Method::third_moment;
  return Method::variance;
}

struct CrossoverRow {
  int k = 1;
  double c_first = 0.0;
  double c_third = 0.0;
  double c_variance = 0.0;
  Method argmax = Method::first_moment;
};

inline constexpr int kCrossoverMaxK = 200;

inline std::vector<CrossoverRow> crossover_table(int k_min, int k_max) {
  if (k_min < 1 || k_max < k_min || k_max > kCrossoverMaxK)
    throw std::invalid_argument("crossover requires 1 <= k_min <= k_max <= 200");
  std::vector<CrossoverRow> rows;
  rows.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) {
    const auto c = best_method(k);
    rows.push_back({k, c.c_first, c.c_third, c.c_variance, c.best});
  }
  return rows;
}

// %.9g
inline std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string crossover_csv(const std::vector<CrossoverRow>& rows) {
  std::string out = "k,c_first,c_third,c_variance,argmax\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + ',' + format_sig9(r.c_first) + ',' + format_sig9(r.c_third) + ',' +
           format_sig9(r.c_variance) + ',' + std::string(to_token(r.argmax)) + '\n';
  }
  return out;
}

}  // namespace dss
