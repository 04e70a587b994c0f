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

#include "fou/fbm.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Cholesky>
#include <unsupported/Eigen/FFT>

#include "fou/errors.hpp"

namespace fou {

namespace {

std::int64_t next_pow2(std::int64_t v) {
  std::int64_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

// Plans are cached per thread; Eigen::FFT is not safe to share.
Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

void FbmGrid::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("FbmGrid: step must be positive, got " + std::to_string(step));
  }
  if (count < 1) throw DomainError("FbmGrid: count must be at least 1");
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw DomainError("FbmGrid: hurst must lie in (0, 1), got " + std::to_string(hurst));
  }
}

const char* to_string(SamplerMethod m) {
  return m == SamplerMethod::circulant ? "circulant" : "cholesky";
}

double increment_autocov(const FbmGrid& grid, std::int64_t lag) {
  const double two_h = 2.0 * grid.hurst;
  const double scale = std::pow(grid.step, two_h);
  const auto k = static_cast<double>(lag < 0 ? -lag : lag);
  if (k == 0.0) return scale;
  if (k == 1.0) return 0.5 * (std::pow(2.0, two_h) - 2.0) * scale;
  // ½ k^{2H} [(1+1/k)^{2H} − 1 + (1−1/k)^{2H} − 1], written with expm1/log1p
  // so the second difference keeps its precision at large lags.
  const double inv = 1.0 / k;
  const double up = std::expm1(two_h * std::log1p(inv));
  const double down = std::expm1(two_h * std::log1p(-inv));
  return 0.5 * std::pow(k, two_h) * (up + down) * scale;
}

Eigen::VectorXd embedding_row(const FbmGrid& grid) {
  grid.validate();
  const std::int64_t half = next_pow2(grid.count);
  Eigen::VectorXd row(2 * half);
  for (std::int64_t k = 0; k <= half; ++k) row[k] = increment_autocov(grid, k);
  for (std::int64_t k = 1; k < half; ++k) row[2 * half - k] = row[k];
  return row;
}

Eigen::VectorXd embedding_eigenvalues(const FbmGrid& grid) {
  const Eigen::VectorXd row = embedding_row(grid);
  Eigen::VectorXcd in = row.cast<std::complex<double>>();
  Eigen::VectorXcd out;
  thread_fft().fwd(out, in);
  return out.real();
}

// ---------------------------------------------------------------------------

CholeskySampler::CholeskySampler(const FbmGrid& grid) : grid_(grid) {
  grid_.validate();
  if (grid_.count > kMaxCholeskyCount) {
    throw SizeError("sample_cholesky: count " + std::to_string(grid_.count) +
                    " exceeds the limit " + std::to_string(kMaxCholeskyCount));
  }
  const auto m = static_cast<Eigen::Index>(grid_.count);
  Eigen::VectorXd acov(m);
  for (Eigen::Index k = 0; k < m; ++k) acov[k] = increment_autocov(grid_, k);
  Eigen::MatrixXd cov(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) cov(i, j) = acov[std::abs(i - j)];
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw FactorizationError("sample_cholesky: covariance is not numerically positive definite");
  }
  lower_ = llt.matrixL();
}

IncrementSeries CholeskySampler::sample(RngSeed seed) const {
  PhiloxStream rng(seed);
  Eigen::VectorXd z(lower_.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  IncrementSeries out{grid_, lower_.triangularView<Eigen::Lower>() * z,
                      SamplerMethod::cholesky, false};
  return out;
}

// ---------------------------------------------------------------------------

CirculantSampler::CirculantSampler(const FbmGrid& grid) : grid_(grid) {
  const Eigen::VectorXd eig = embedding_eigenvalues(grid_);
  const double top = eig.maxCoeff();
  if (eig.minCoeff() < -kNegativeTolerance * top) {
    fallback_ = std::make_unique<CholeskySampler>(grid_);
    return;
  }
  const auto size = static_cast<double>(eig.size());
  scale_ = (eig.array().max(0.0) / size).sqrt().matrix();
}

CirculantSampler::~CirculantSampler() = default;
CirculantSampler::CirculantSampler(CirculantSampler&&) noexcept = default;
CirculantSampler& CirculantSampler::operator=(CirculantSampler&&) noexcept = default;

bool CirculantSampler::uses_fallback() const { return fallback_ != nullptr; }

IncrementSeries CirculantSampler::sample(RngSeed seed) const {
  if (fallback_) {
    IncrementSeries out = fallback_->sample(seed);
    out.fallback = true;
    return out;
  }
  PhiloxStream rng(seed);
  const Eigen::Index size = scale_.size();
  Eigen::VectorXcd weighted(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    weighted[k] = scale_[k] * std::complex<double>(re, im);
  }
  Eigen::VectorXcd spectrum;
  thread_fft().fwd(spectrum, weighted);
  IncrementSeries out{grid_, spectrum.head(grid_.count).real(), SamplerMethod::circulant, false};
  return out;
}

IncrementSeries sample_circulant(const FbmGrid& grid, RngSeed seed) {
  return CirculantSampler(grid).sample(seed);
}

IncrementSeries sample_cholesky(const FbmGrid& grid, RngSeed seed) {
  return CholeskySampler(grid).sample(seed);
}

Eigen::VectorXd partial_sums(const IncrementSeries& incs) {
  Eigen::VectorXd sums(incs.values.size() + 1);
  sums[0] = 0.0;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < incs.values.size(); ++k) {
    acc += incs.values[k];
    sums[k + 1] = acc;
  }
  return sums;
}

}  // namespace fou
