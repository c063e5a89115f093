#pragma once

// Exact binomial coefficients and the absolute central moment sums
//
//   T_p(n) = sum_{i=0}^{n} C(n,i) |n - 2i|^p
//
// that bound E|sum eps_i x_i|^p at the extremal configuration. The
// half-integer form S_p(n) = sum C(n,i) |n/2 - i|^p equals T_p(n) / 2^p; all
// internal arithmetic stays on the integer side and rationals only appear at
// the API boundary.

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace dss {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

// C(n, i); zero when i > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t i) {
  if (i > n) return 0;
  if (i > n - i) i = n - i;
  BigInt r = 1;
  for (std::uint64_t j = 0; j < i; ++j) {
    r *= n - j;
    r /= j + 1;  // exact: C(n,j)(n-j) = C(n,j+1)(j+1)
  }
  return r;
}

struct ScaledMomentSum {
  unsigned n = 0;
  unsigned p = 1;
  BigInt value;  // T_p(n)

  // S_p(n) = T_p(n) / 2^p
  Rational unscaled() const { return Rational(value, pow2(p)); }
};

inline ScaledMomentSum scaled_abs_moment_sum(unsigned n, unsigned p) {
  if (p == 0) throw std::invalid_argument("moment order p must be positive");
  ScaledMomentSum out{n, p, 0};
  BigInt c = 1;  // C(n, i), updated in place
  for (unsigned i = 0; i <= n; ++i) {
    const long long d = static_cast<long long>(n) - 2LL * i;
    const BigInt dist = d < 0 ? -d : d;
    out.value += c * boost::multiprecision::pow(dist, p);
    c = c * (n - i) / (i + 1);
  }
  return out;
}

// n * C(n-1, floor((n-1)/2)); equals T_1(n) / 2.
inline Rational closed_form_s1(unsigned n) {
  if (n == 0) throw std::invalid_argument("closed_form_s1 requires n >= 1");
  return Rational(BigInt(n) * binomial(n - 1, (n - 1) / 2));
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned j = 2; j <= n; ++j) r *= j;
  return r;
}

// Even n: n! / ((n/2 - 1)!)^2.  Odd n: n! (2n - 1) / (4 (((n-1)/2)!)^2).
// Equals T_3(n) / 8.
inline Rational closed_form_s3(unsigned n) {
  if (n == 0) throw std::invalid_argument("closed_form_s3 requires n >= 1");
  if (n % 2 == 0) {
    const BigInt h = factorial(n / 2 - 1);
    return Rational(factorial(n), h * h);
  }
  const BigInt h = factorial((n - 1) / 2);
  return Rational(factorial(n) * (2 * BigInt(n) - 1), 4 * h * h);
}

// Even-branch expression evaluated at n rounded up to the next even number.
// Upper bound for S_3(n) at every n >= 1.
inline Rational s3_even_majorant(unsigned n) {
  if (n == 0) throw std::invalid_argument("s3_even_majorant requires n >= 1");
  return closed_form_s3(n % 2 == 0 ? n : n + 1);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace dss
