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
#include <optional>
#include <string_view>
#include <utility>

#include "fou/fou_sim.hpp"

namespace fou {

enum class Ef2Mode { asymptotic, quadrature };

const char* to_string(Ef2Mode mode);
Ef2Mode parse_ef2_mode(std::string_view text);

/// Normalizing constants for one (θ, H, n, Δ).
struct TheoryConstants {
  double alpha_n = 0.0;           // H(2H−1)∫₀^T∫₀^t e^{−θu}u^{2H−2} du dt
  double alpha_limit_rate = 0.0;  // lim α_n / T_n = θ^{1−2H} H Γ(2H)
  double a_theta_h = 0.0;         // lim E(F_T²)
  double ef2 = 0.0;               // value used for E(F_{T_n}²)
  Ef2Mode ef2_source = Ef2Mode::asymptotic;
  double lambda_n = 0.0;          // α_n / (θ T_n √ef2)
  double sigma_h2 = 0.0;          // limiting variance of √T_n(θ̂ − θ)
  SamplingScheme scheme;
  ModelParams params;

  /// λ at T = ∞: alpha_limit_rate / (θ √A).
  double lambda_limit() const;
};

/// The seven summands of the Berry-Esseen rate, multiplicative constant
/// taken as 1 (only decay rates are meaningful).
struct BoundBudget {
  static constexpr std::array<const char*, 7> kNames = {"t1", "t2", "t3", "t4", "t5", "t6", "t7"};
  static constexpr const char* kCaveat =
      "rate-only: the unknown constant c is reported as 1 and is not estimated";

  double eta = 0.0;
  double dlt = 0.0;
  std::array<double, 7> terms{};
  double total = 0.0;
};

double alpha_n(const ModelParams& params, double horizon);

/// α_n by nested adaptive quadrature of its defining double integral.
double alpha_n_quadrature(const ModelParams& params, double horizon, double rel_tol = 1e-12);

double alpha_limit_rate(const ModelParams& params);

/// A(θ, H); H must lie in (1/2, 3/4).
double a_theta_h(const ModelParams& params);

/// σ_H² = (4H−1)θ(1 + Γ(3−4H)Γ(4H−1)/(Γ(2−2H)Γ(2H))); H in (1/2, 3/4).
double sigma_h2(const ModelParams& params);

enum class ContractionOrder { kernel_first, covariance_first };

/// E(F_T²) for e^{−θ|t−s|} replaced by its cell averages on `cells` equal
/// cells, with the singular kernel integrated exactly cell by cell:
/// tr(F R F R) / (2T).
double ef2_discrete(const ModelParams& params, double horizon, std::int64_t cells,
                    ContractionOrder order = ContractionOrder::kernel_first);

struct Ef2Estimate {
  double value = 0.0;
  double error = 0.0;    // size of the Richardson correction
  double order = 0.0;    // observed convergence order in the cell width
  std::array<double, 3> levels{};
  std::int64_t base_cells = 0;
};

/// E(F_T²) by Richardson extrapolation over three nested cell widths.
/// T ≤ 50 and H in (1/2, 3/4).
Ef2Estimate ef2_quadrature_detail(const ModelParams& params, double horizon);
double ef2_quadrature(const ModelParams& params, double horizon);

inline constexpr double kMaxEf2Horizon = 50.0;

TheoryConstants constants(const ModelParams& params, const SamplingScheme& scheme,
                          Ef2Mode ef2_mode = Ef2Mode::asymptotic);

/// η, δ ∈ (0, 1), H ∈ (1/2, 3/4).
BoundBudget bound_budget(const SamplingScheme& scheme, const ModelParams& params, double eta,
                         double dlt);

/// Exponent pair for the specialization η = √(nΔ^β), δ = Δ^α.
struct RateExponents {
  double alpha = 0.0;
  double beta = 0.0;
  bool beta_warning = false;  // β ≤ 1
};

/// Validates 0 < α < H and 0 < β < 4H − 1; flags β ≤ 1.
RateExponents make_rate_exponents(const ModelParams& params, double alpha, double beta);

/// Midpoint choice for Δ_n = n^{−γ}: α = ½ min(H, (1−γ)/(2γ)), β the midpoint
/// of (1/γ, 4H−1). γ must lie inside gamma_window(H).
RateExponents rate_exponents_for_gamma(const ModelParams& params, double gamma);

/// Evaluates the specialized seven-term display directly in α, β.
BoundBudget bound_budget_specialized(const SamplingScheme& scheme, const ModelParams& params,
                                     const RateExponents& exps);

/// Open interval (1/(4H−1), 1/(2H)) of admissible γ; H ∈ (1/2, 3/4).
std::pair<double, double> gamma_window(double hurst);
bool in_gamma_window(double hurst, double gamma);

/// Budget used by reports: explicit η/δ when both given, else the γ
/// specialization when γ is known, else η = δ = 0.1.
BoundBudget report_budget(const SamplingScheme& scheme, const ModelParams& params,
                          std::optional<double> eta, std::optional<double> dlt,
                          std::optional<double> gamma);

}  // namespace fou
