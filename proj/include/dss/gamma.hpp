#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dss {

namespace detail {

// Lanczos approximation, g = 7, nine terms (Godfrey's coefficients).
// Relative error is a few ulps across the positive real line.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551353999,  12.507343278686904814458936853287,
    -0.13857109526572011689554706984971, 9.984369578019570859563e-6,
    1.50563273514931155834e-7};

// sum term A(z) for Gamma(z + 1)
inline double lanczos_sum(double z) {
  double a = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) a += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  return a;
}

inline bool is_integer(double x) { return std::floor(x) == x; }
inline bool is_half_integer(double x) { return is_integer(x - 0.5); }

}  // namespace detail

inline constexpr double kGammaMinArg = 0.05;
inline constexpr double kGammaMaxArg = 500.0;

// log Gamma(x) for x > 0.
inline double log_gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::out_of_range("log_gamma_fn: argument must be positive and finite");
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma_fn(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + detail::kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(detail::lanczos_sum(z));
}

// Gamma(x) on [kGammaMinArg, kGammaMaxArg]. Integer and half-integer
// arguments are evaluated by exact products (factorials, sqrt(pi) multiples).
// Arguments above ~171.62 overflow double and return +infinity; use
// log_gamma_fn there.
inline double gamma_fn(double x) {
  if (!(x >= kGammaMinArg && x <= kGammaMaxArg))
    throw std::out_of_range("gamma_fn: argument " + std::to_string(x) + " outside [0.05, 500]");
  if (detail::is_integer(x)) {
    double r = 1.0;
    for (double j = 2.0; j < x; j += 1.0) r *= j;
    return r;
  }
  if (detail::is_half_integer(x)) {
    double r = std::sqrt(std::numbers::pi);
    for (double j = 0.5; j < x; j += 1.0) r *= j;
    return r;
  }
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  if (x > 171.7) return std::numeric_limits<double>::infinity();
  const double z = x - 1.0;
  const double t = z + detail::kLanczosG + 0.5;
  // split the power to postpone overflow near the top of the range
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * detail::lanczos_sum(z);
}

}  // namespace dss
