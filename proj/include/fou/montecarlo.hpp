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
#include <optional>
#include <span>
#include <vector>

#include "fou/theory.hpp"

namespace fou {

/// Exact one-sample KS statistic against Φ:
/// max_i max(i/N − Φ(x_(i)), Φ(x_(i)) − (i−1)/N).
double ks_to_std_normal(std::span<const double> sample);

/// Two-sample KS statistic sup |F_a − F_b|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}.
double kolmogorov_survival(double lambda);

/// Asymptotic p-value of a two-sample KS statistic (Stephens' small-sample
/// correction of the effective size).
double ks_two_sample_pvalue(double statistic, std::size_t size_a, std::size_t size_b);

struct McConfig {
  ModelParams params;
  std::vector<SamplingScheme> schedule;
  std::optional<double> gamma;  // set when every scheme uses Δ_n = n^{−γ}
  std::int64_t replications = 4000;
  std::uint64_t base_seed = 0;
  Ef2Mode ef2_mode = Ef2Mode::asymptotic;
  std::optional<double> eta;
  std::optional<double> dlt;

  static constexpr std::int64_t kMinReplications = 100;

  void validate() const;
};

struct SchemeRecord {
  std::int64_t n = 0;
  double delta = 0.0;
  double horizon = 0.0;
  int oversample = 0;
  double mean_theta_hat = 0.0;
  double sd_theta_hat = 0.0;
  double bias = 0.0;
  double ks_distance = 0.0;  // studentized sample vs Φ
  double var_ratio = 0.0;    // Var(√T(θ̂ − θ)) / σ_H²
  std::int64_t degenerate_count = 0;
  std::int64_t fallback_count = 0;
  double lambda_n = 0.0;
  double sigma_h2 = 0.0;
  BoundBudget budget;
  double seconds = 0.0;
  std::vector<double> theta_hat;  // per replication, NaN where degenerate
};

struct McReport {
  McConfig config;
  std::vector<SchemeRecord> records;
};

/// Replicates simulate → estimate for every scheme. Replication r uses
/// RngSeed{base_seed, r}; statistics are reduced in replication order, so
/// the report does not depend on `threads`.
McReport run(const McConfig& config, unsigned threads = 1);

/// Worker count from an explicit request, else FOU_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> requested);

}  // namespace fou
