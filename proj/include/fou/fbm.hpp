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
#include <memory>

#include <Eigen/Core>

#include "fou/rng.hpp"

namespace fou {

/// Uniform grid for fractional Brownian motion increments.
struct FbmGrid {
  double step = 1.0;        // δ
  std::int64_t count = 1;   // number of increments
  double hurst = 0.5;       // accepted on (0, 1)

  void validate() const;
};

enum class SamplerMethod { circulant, cholesky };

const char* to_string(SamplerMethod m);

/// ΔB_k = B_{(k+1)δ} − B_{kδ}, k = 0..count-1.
struct IncrementSeries {
  FbmGrid grid;
  Eigen::VectorXd values;
  SamplerMethod method = SamplerMethod::circulant;
  bool fallback = false;  // circulant requested but Cholesky used
};

/// Autocovariance of fBm increments at `lag` on `grid`:
/// ½(|k+1|^{2H} − 2k^{2H} + |k−1|^{2H}) δ^{2H}.
double increment_autocov(const FbmGrid& grid, std::int64_t lag);

/// First row of the circulant embedding (length 2M, M = next power of two
/// ≥ count) and its eigenvalues, unclamped.
Eigen::VectorXd embedding_row(const FbmGrid& grid);
Eigen::VectorXd embedding_eigenvalues(const FbmGrid& grid);

/// Exact sampler by Cholesky factor of the full Toeplitz covariance.
/// count ≤ kMaxCholeskyCount.
class CholeskySampler {
 public:
  static constexpr std::int64_t kMaxCholeskyCount = 4096;

  explicit CholeskySampler(const FbmGrid& grid);

  IncrementSeries sample(RngSeed seed) const;
  const FbmGrid& grid() const { return grid_; }

 private:
  FbmGrid grid_;
  Eigen::MatrixXd lower_;
};

/// Davies-Harte circulant-embedding sampler. The embedding spectrum is
/// computed once per grid; `sample` is const and safe to call concurrently.
/// Eigenvalues below −1e-9·max switch the sampler to Cholesky.
class CirculantSampler {
 public:
  static constexpr double kNegativeTolerance = 1e-9;

  explicit CirculantSampler(const FbmGrid& grid);
  ~CirculantSampler();
  CirculantSampler(CirculantSampler&&) noexcept;
  CirculantSampler& operator=(CirculantSampler&&) noexcept;

  IncrementSeries sample(RngSeed seed) const;

  const FbmGrid& grid() const { return grid_; }
  bool uses_fallback() const;
  std::int64_t embedding_size() const { return static_cast<std::int64_t>(scale_.size()); }

 private:
  FbmGrid grid_;
  Eigen::VectorXd scale_;  // sqrt(λ_k / 2M)
  std::unique_ptr<CholeskySampler> fallback_;
};

IncrementSeries sample_circulant(const FbmGrid& grid, RngSeed seed);
IncrementSeries sample_cholesky(const FbmGrid& grid, RngSeed seed);

/// B_{kδ}, k = 0..count, with B_0 = 0.
Eigen::VectorXd partial_sums(const IncrementSeries& incs);

}  // namespace fou
