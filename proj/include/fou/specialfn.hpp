/*
 * Copyright 2026 The fou-lse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>

#include "fou/errors.hpp"

/// Scalar special functions behind the closed-form constants: Gamma, the
/// lower incomplete Gamma and the standard normal CDF/quantile. Templated on
/// the floating type; every call site in the library instantiates `double`.
namespace fou::specialfn {

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

template <std::floating_point Scalar>
Scalar gamma_lanczos(Scalar x) {
  // valid for x >= 0.5
  x -= Scalar(1);
  Scalar acc = Scalar(kLanczos[0]);
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += Scalar(kLanczos[i]) / (x + Scalar(i));
  }
  const Scalar t = x + Scalar(kLanczosG) + Scalar(0.5);
  const Scalar sqrt_two_pi = std::sqrt(Scalar(2) * std::numbers::pi_v<Scalar>);
  return sqrt_two_pi * std::pow(t, x + Scalar(0.5)) * std::exp(-t) * acc;
}

template <std::floating_point Scalar>
Scalar polynomial(const Scalar* coeffs, std::size_t count, Scalar r) {
  Scalar acc = coeffs[count - 1];
  for (std::size_t i = count - 1; i-- > 0;) acc = acc * r + coeffs[i];
  return acc;
}

}  // namespace detail

/// Gamma function for x > 0. Reflection below 1/2, Lanczos above.
template <std::floating_point Scalar>
Scalar gamma(Scalar x) {
  if (!std::isfinite(x) || x <= Scalar(0)) {
    throw DomainError("gamma: argument must be positive and finite, got " +
                      std::to_string(static_cast<double>(x)));
  }
  if (x < Scalar(0.5)) {
    const Scalar pi = std::numbers::pi_v<Scalar>;
    return pi / (std::sin(pi * x) * detail::gamma_lanczos(Scalar(1) - x));
  }
  return detail::gamma_lanczos(x);
}

/// Upper incomplete Gamma Γ(a, x) for x >= a + 1, by modified Lentz on the
/// Legendre continued fraction.
template <std::floating_point Scalar>
Scalar upper_incomplete_gamma_cf(Scalar a, Scalar x) {
  constexpr Scalar tiny = std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar b = x + Scalar(1) - a;
  Scalar c = Scalar(1) / tiny;
  Scalar d = Scalar(1) / b;
  Scalar h = d;
  for (int i = 1; i < 10000; ++i) {
    const Scalar an = -Scalar(i) * (Scalar(i) - a);
    b += Scalar(2);
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    const Scalar del = d * c;
    h *= del;
    if (std::abs(del - Scalar(1)) <= eps) break;
  }
  return std::exp(-x + a * std::log(x)) * h;
}

/// Lower incomplete Gamma γ(a, x) = ∫₀ˣ t^{a-1} e^{-t} dt (not regularized).
template <std::floating_point Scalar>
Scalar lower_incomplete_gamma(Scalar a, Scalar x) {
  if (!std::isfinite(a) || a <= Scalar(0)) {
    throw DomainError("lower_incomplete_gamma: a must be positive, got " +
                      std::to_string(static_cast<double>(a)));
  }
  if (std::isnan(x) || x < Scalar(0)) {
    throw DomainError("lower_incomplete_gamma: x must be nonnegative");
  }
  if (x == Scalar(0)) return Scalar(0);
  if (std::isinf(x)) return gamma(a);
  if (x < a + Scalar(1)) {
    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
    Scalar term = Scalar(1) / a;
    Scalar sum = term;
    for (int n = 1; n < 100000; ++n) {
      term *= x / (a + Scalar(n));
      sum += term;
      if (std::abs(term) < std::abs(sum) * eps) break;
    }
    return sum * std::exp(-x + a * std::log(x));
  }
  return gamma(a) - upper_incomplete_gamma_cf(a, x);
}

/// Φ(z) via erfc; accurate in both tails.
template <std::floating_point Scalar>
Scalar std_normal_cdf(Scalar z) {
  return Scalar(0.5) * std::erfc(-z / std::numbers::sqrt2_v<Scalar>);
}

/// Φ⁻¹(p), Wichura's AS241 (PPND16), relative accuracy about 1e-16.
template <std::floating_point Scalar>
Scalar std_normal_quantile(Scalar p) {
  if (!(p > Scalar(0) && p < Scalar(1))) {
    throw DomainError("std_normal_quantile: p must lie in (0, 1)");
  }
  static constexpr double a[] = {
      3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
      1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[] = {
      1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2, 5.3941960214247511077e+3,
      2.1213794301586595867e+4, 3.9307895800092710610e+4, 2.8729085735721942674e+4,
      5.2264952788528545610e+3};
  static constexpr double c[] = {
      1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[] = {
      1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9};
  static constexpr double e[] = {
      6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[] = {
      1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15};

  const double q = static_cast<double>(p) - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return Scalar(q * detail::polynomial(a, 8, r) / detail::polynomial(b, 8, r));
  }
  double r = q < 0.0 ? static_cast<double>(p) : 1.0 - static_cast<double>(p);
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = detail::polynomial(c, 8, r) / detail::polynomial(d, 8, r);
  } else {
    r -= 5.0;
    val = detail::polynomial(e, 8, r) / detail::polynomial(f, 8, r);
  }
  return Scalar(q < 0.0 ? -val : val);
}

}  // namespace fou::specialfn
