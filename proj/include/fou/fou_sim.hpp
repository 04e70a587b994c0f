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
#include <iosfwd>

#include <Eigen/Core>

#include "fou/fbm.hpp"

namespace fou {

/// dX_t = −θ X_t dt + dB_t, X_0 = x0, B an fBm with Hurst index H.
struct ModelParams {
  double theta = 1.0;
  double hurst = 0.7;  // strictly inside (1/2, 1)
  double x0 = 0.0;

  void validate() const;
};

/// Observation grid t_i = iΔ, i = 0..n, simulated on a fine grid of step Δ/m.
struct SamplingScheme {
  std::int64_t n = 2;
  double delta = 1.0;
  int oversample = 8;

  static constexpr std::int64_t kMaxFineSteps = std::int64_t{1} << 26;

  /// Δ_n = n^{−γ}.
  static SamplingScheme from_gamma(std::int64_t n, double gamma, int oversample = 8);

  double horizon() const { return static_cast<double>(n) * delta; }
  double fine_step() const { return delta / oversample; }
  std::int64_t fine_steps() const { return n * oversample; }
  FbmGrid fine_grid(double hurst) const { return {fine_step(), fine_steps(), hurst}; }

  void validate() const;
};

struct PathMeta {
  SamplerMethod method = SamplerMethod::circulant;
  bool fallback = false;
  RngSeed seed{};
};

struct ObservedPath {
  ModelParams params;
  SamplingScheme scheme;
  Eigen::VectorXd x;  // X_{t_0}, ..., X_{t_n}
  PathMeta meta;
};

/// Simulates one discretely observed path. The fine path follows
/// X_{t+δ} = e^{−θδ} X_t + ΔB and every m-th point is kept.
ObservedPath simulate_path(const ModelParams& params, const SamplingScheme& scheme, RngSeed seed);

/// Same, reusing a sampler built for scheme.fine_grid(params.hurst).
ObservedPath simulate_path(const ModelParams& params, const SamplingScheme& scheme,
                           const CirculantSampler& sampler, RngSeed seed);

/// Drives the recursion with caller-supplied fine increments (n·m values).
/// Hurst is not range-checked here, so H = 1/2 sanity runs can use it.
ObservedPath simulate_from_increments(const ModelParams& params, const SamplingScheme& scheme,
                                      const Eigen::Ref<const Eigen::VectorXd>& fine_increments,
                                      PathMeta meta = {});

/// E[X_t²] = x0² e^{−2θt} + (H(2H−1)/θ) ∫₀ᵗ z^{2H−2}(e^{−θz} − e^{θz−2θt}) dz.
double exact_second_moment(const ModelParams& params, double t);

/// Upper bound 2(x0² + HΓ(2H)/θ^{2H}) on sup_t E[X_t²].
double second_moment_bound(const ModelParams& params);

/// CSV with header `i,t,x`.
void write_path_csv(std::ostream& os, const ObservedPath& path);

struct PathCsv {
  Eigen::VectorXd x;
  double delta = 0.0;
};

/// Reads the `i,t,x` format back; Δ is taken from the time column, which must
/// be equidistant and start at 0.
PathCsv read_path_csv(std::istream& is);

}  // namespace fou
