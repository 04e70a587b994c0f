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

#include <cstdint>

#include <Eigen/Core>

#include "fou/fou_sim.hpp"

namespace fou {

struct TheoryConstants;

/// θ̂ = numerator / denominator with
///   numerator   = −Σ X_{t_{i−1}} (X_{t_i} − X_{t_{i−1}})
///   denominator = Δ Σ X_{t_{i−1}}²
struct EstimateResult {
  double theta_hat = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  std::int64_t n = 0;
  double delta = 0.0;
};

/// Least-squares drift estimate from x[0..n] sampled every `delta`.
/// Throws DegeneratePathError when Σ X_{t_{i−1}}² = 0.
EstimateResult estimate(const Eigen::Ref<const Eigen::VectorXd>& x, double delta);
EstimateResult estimate(const ObservedPath& path);

/// λ_n √(nΔ) (θ̂ − θ) using the true θ.
double studentize(const EstimateResult& est, const ModelParams& truth,
                  const TheoryConstants& consts);

}  // namespace fou
