#pragma once

// Volume and surface of p-norm balls in R^k,
//
//   V_{k,p}(R) = [2 Gamma(1 + 1/p)]^k / Gamma(1 + k/p) * R^k,
//   S_{k,p}(R) = dV/dR = k V_{k,p}(R) / R,
//
// and the radius at which the volume reaches 2^n.

#include <cmath>
#include <stdexcept>

#include "dss/gamma.hpp"

namespace dss {

namespace detail {

inline void check_dims(int k, int p) {
  if (k < 1) throw std::invalid_argument("dimension k must be >= 1");
  if (p < 1) throw std::invalid_argument("norm exponent p must be >= 1");
}

// [2 Gamma(1 + 1/p)]^k / Gamma(1 + k/p)
inline double unit_ball_volume(int k, int p) {
  const double per_axis = 2.0 * gamma_fn(1.0 + 1.0 / p);
  const double denom_arg = 1.0 + static_cast<double>(k) / p;
  if (denom_arg <= 171.0) return std::pow(per_axis, k) / gamma_fn(denom_arg);
  return std::exp(k * std::log(per_axis) - log_gamma_fn(denom_arg));
}

}  // namespace detail

struct PNormBall {
  int k = 1;
  int p = 2;
  double radius = 1.0;

  double volume() const;
  double surface() const;
};

inline double ball_volume(int k, int p, double radius) {
  detail::check_dims(k, p);
  if (!(radius >= 0.0)) throw std::invalid_argument("radius must be >= 0");
  return detail::unit_ball_volume(k, p) * std::pow(radius, k);
}

inline double ball_surface(int k, int p, double radius) {
  detail::check_dims(k, p);
  if (!(radius > 0.0)) throw std::invalid_argument("ball_surface requires radius > 0");
  return k * detail::unit_ball_volume(k, p) * std::pow(radius, k - 1);
}

inline double PNormBall::volume() const { return ball_volume(k, p, radius); }
inline double PNormBall::surface() const { return ball_surface(k, p, radius); }

// Unique R >= 0 with V_{k,p}(R) = 2^n:
//   R = 2^{n/k} Gamma(1 + k/p)^{1/k} / (2 Gamma(1 + 1/p)).
inline double radius_for_count(unsigned n, int k, int p) {
  detail::check_dims(k, p);
  const double denom_arg = 1.0 + static_cast<double>(k) / p;
  const double gamma_root = denom_arg <= 171.0 ? std::pow(gamma_fn(denom_arg), 1.0 / k)
                                               : std::exp(log_gamma_fn(denom_arg) / k);
  return std::exp2(static_cast<double>(n) / k) * gamma_root / (2.0 * gamma_fn(1.0 + 1.0 / p));
}

}  // namespace dss
