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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fou/quadrature.hpp"

using namespace fou;

TEST_CASE("smooth integrands") {
  const auto r = quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(std::abs(r.value - 2.0) < 1e-13);
  const auto g = quad::integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0);
  CHECK(std::abs(g.value - std::sqrt(std::numbers::pi)) < 1e-12);
  CHECK(quad::integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("power-weighted endpoint singularity") {
  // ∫₀¹ z^{-0.9} dz = 10
  const auto r = quad::integrate_power_weighted([](double) { return 1.0; }, 0.1, 1.0);
  CHECK(std::abs(r.value - 10.0) < 1e-11);
  // ∫₀² z^{a-1} e^{-z} with a = 0.4 against the frozen mpmath value.
  const auto s = quad::integrate_power_weighted([](double z) { return std::exp(-z); }, 0.4, 2.0);
  CHECK(std::abs(s.value - 2.14528678133789441) < 1e-11);
}
