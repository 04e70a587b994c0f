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

#include "fou/theory.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <unsupported/Eigen/FFT>

#include "fou/errors.hpp"
#include "fou/quadrature.hpp"
#include "fou/specialfn.hpp"

namespace fou {

namespace sf = specialfn;

namespace {

void require_be_range(double hurst, const char* who) {
  if (!(hurst > 0.5 && hurst < 0.75)) {
    throw DomainError(std::string(who) +
                      ": requires H in (1/2, 3/4) (Gamma(3-4H) has a pole at H = 3/4), got H = " +
                      std::to_string(hurst));
  }
}

void require_horizon(double horizon, const char* who) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError(std::string(who) + ": horizon must be positive, got " +
                      std::to_string(horizon));
  }
}

// y = T x for a symmetric Toeplitz T, two real columns per complex FFT.
class ToeplitzProduct {
 public:
  explicit ToeplitzProduct(const Eigen::VectorXd& first_column) : size_(first_column.size()) {
    length_ = 1;
    while (length_ < 2 * size_) length_ <<= 1;
    Eigen::VectorXcd embed = Eigen::VectorXcd::Zero(length_);
    for (Eigen::Index k = 0; k < size_; ++k) embed[k] = first_column[k];
    for (Eigen::Index k = 1; k < size_; ++k) embed[length_ - k] = first_column[k];
    fft_.fwd(spectrum_, embed);
  }

  // Columns of `out` = T * columns of `in`.
  void apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
    out.resize(size_, in.cols());
    Eigen::VectorXcd buf(length_);
    Eigen::VectorXcd freq;
    Eigen::VectorXcd back;
    for (Eigen::Index c = 0; c < in.cols(); c += 2) {
      const bool pair = c + 1 < in.cols();
      buf.setZero();
      for (Eigen::Index k = 0; k < size_; ++k) {
        buf[k] = std::complex<double>(in(k, c), pair ? in(k, c + 1) : 0.0);
      }
      fft_.fwd(freq, buf);
      freq.array() *= spectrum_.array();
      fft_.inv(back, freq);
      for (Eigen::Index k = 0; k < size_; ++k) {
        out(k, c) = back[k].real();
        if (pair) out(k, c + 1) = back[k].imag();
      }
    }
  }

 private:
  Eigen::Index size_;
  Eigen::Index length_;
  Eigen::VectorXcd spectrum_;
  Eigen::FFT<double> fft_;
};

Eigen::MatrixXd toeplitz_dense(const Eigen::VectorXd& column) {
  const Eigen::Index m = column.size();
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) out(i, j) = column[std::abs(i - j)];
  }
  return out;
}

}  // namespace

const char* to_string(Ef2Mode mode) {
  return mode == Ef2Mode::asymptotic ? "asymptotic" : "quadrature";
}

Ef2Mode parse_ef2_mode(std::string_view text) {
  if (text == "asymptotic") return Ef2Mode::asymptotic;
  if (text == "quadrature") return Ef2Mode::quadrature;
  throw DomainError("ef2 mode must be 'asymptotic' or 'quadrature', got '" + std::string(text) +
                    "'");
}

double TheoryConstants::lambda_limit() const {
  return alpha_limit_rate / (params.theta * std::sqrt(a_theta_h));
}

double alpha_n(const ModelParams& params, double horizon) {
  params.validate();
  require_horizon(horizon, "alpha_n");
  const double h = params.hurst;
  const double theta = params.theta;
  const double x = theta * horizon;
  // H(2H−1) ∫₀^T e^{−θu} u^{2H−2} (T − u) du in incomplete-Gamma form.
  const double first = horizon * std::pow(theta, 1.0 - 2.0 * h) *
                       sf::lower_incomplete_gamma(2.0 * h - 1.0, x);
  const double second = std::pow(theta, -2.0 * h) * sf::lower_incomplete_gamma(2.0 * h, x);
  return h * (2.0 * h - 1.0) * (first - second);
}

double alpha_n_quadrature(const ModelParams& params, double horizon, double rel_tol) {
  params.validate();
  require_horizon(horizon, "alpha_n_quadrature");
  const double h = params.hurst;
  const double theta = params.theta;
  const double a = 2.0 * h - 1.0;
  const quad::Options inner_opt{0.0, rel_tol * 0.1, 20000};
  auto inner = [&](double t) {
    if (t <= 0.0) return 0.0;
    auto decay = [&](double u) { return std::exp(-theta * u); };
    return quad::integrate_power_weighted(decay, a, t, inner_opt).value;
  };
  // Outer integrand t^{1−a} I(t) is smooth at 0 since I(t) ~ t^a / a.
  auto outer = [&](double t) { return t <= 0.0 ? 1.0 / a : std::pow(t, 1.0 - a) * inner(t); };
  const auto r = quad::integrate_power_weighted(outer, a, horizon, {0.0, rel_tol, 20000});
  return h * (2.0 * h - 1.0) * r.value;
}

double alpha_limit_rate(const ModelParams& params) {
  params.validate();
  const double h = params.hurst;
  return std::pow(params.theta, 1.0 - 2.0 * h) * h * sf::gamma(2.0 * h);
}

double a_theta_h(const ModelParams& params) {
  params.validate();
  require_be_range(params.hurst, "a_theta_h");
  const double h = params.hurst;
  const double g2h = sf::gamma(2.0 * h);
  const double bracket =
      g2h * g2h + g2h * sf::gamma(3.0 - 4.0 * h) * sf::gamma(4.0 * h - 1.0) / sf::gamma(2.0 - 2.0 * h);
  return std::pow(params.theta, 1.0 - 4.0 * h) * h * h * (4.0 * h - 1.0) * bracket;
}

double sigma_h2(const ModelParams& params) {
  params.validate();
  require_be_range(params.hurst, "sigma_h2");
  const double h = params.hurst;
  const double ratio = sf::gamma(3.0 - 4.0 * h) * sf::gamma(4.0 * h - 1.0) /
                       (sf::gamma(2.0 - 2.0 * h) * sf::gamma(2.0 * h));
  return (4.0 * h - 1.0) * params.theta * (1.0 + ratio);
}

double ef2_discrete(const ModelParams& params, double horizon, std::int64_t cells,
                    ContractionOrder order) {
  params.validate();
  require_be_range(params.hurst, "ef2_discrete");
  require_horizon(horizon, "ef2_discrete");
  if (cells < 2) throw DomainError("ef2_discrete: need at least 2 cells");
  const auto m = static_cast<Eigen::Index>(cells);
  const double width = horizon / static_cast<double>(cells);

  // Cell-integrated singular kernel: H(2H−1)∫∫|u−v|^{2H−2} over cells i, k is
  // the fBm increment covariance on the cell grid.
  const FbmGrid cell_grid{width, cells, params.hurst};
  Eigen::VectorXd kernel(m);
  for (Eigen::Index k = 0; k < m; ++k) kernel[k] = increment_autocov(cell_grid, k);

  // Cell averages of e^{−θ|t−s|}.
  const double a = params.theta * width;
  Eigen::VectorXd smooth(m);
  smooth[0] = 2.0 * (a + std::expm1(-a)) / (a * a);
  const double off = (2.0 * std::cosh(a) - 2.0) / (a * a);
  for (Eigen::Index k = 1; k < m; ++k) smooth[k] = std::exp(-a * static_cast<double>(k)) * off;

  const bool kernel_first = order == ContractionOrder::kernel_first;
  // P = F R (or R F); the trace tr(F R F R) = Σ_ik P_ik P_ki.
  ToeplitzProduct left(kernel_first ? smooth : kernel);
  const Eigen::MatrixXd right = toeplitz_dense(kernel_first ? kernel : smooth);
  Eigen::MatrixXd product;
  left.apply(right, product);
  const double trace = product.cwiseProduct(product.transpose()).sum();
  return trace / (2.0 * horizon);
}

Ef2Estimate ef2_quadrature_detail(const ModelParams& params, double horizon) {
  params.validate();
  require_be_range(params.hurst, "ef2_quadrature");
  require_horizon(horizon, "ef2_quadrature");
  if (horizon > kMaxEf2Horizon) {
    throw SizeError("ef2_quadrature: horizon " + std::to_string(horizon) + " exceeds the limit " +
                    std::to_string(kMaxEf2Horizon));
  }
  const double width = std::min({0.1, 0.1 / params.theta, horizon / 16.0});
  const auto base = static_cast<std::int64_t>(std::ceil(horizon / width));
  Ef2Estimate est;
  est.base_cells = base;
  for (int level = 0; level < 3; ++level) {
    est.levels[level] = ef2_discrete(params, horizon, base << level);
  }
  const double d1 = est.levels[1] - est.levels[0];
  const double d2 = est.levels[2] - est.levels[1];
  if (d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) {
    const double ratio = d1 / d2;
    est.order = std::log2(ratio);
    const double correction = d2 / (ratio - 1.0);
    est.value = est.levels[2] + correction;
    est.error = std::abs(correction);
  } else {
    est.value = est.levels[2];
    est.error = std::abs(d2);
  }
  return est;
}

double ef2_quadrature(const ModelParams& params, double horizon) {
  return ef2_quadrature_detail(params, horizon).value;
}

TheoryConstants constants(const ModelParams& params, const SamplingScheme& scheme,
                          Ef2Mode ef2_mode) {
  params.validate();
  scheme.validate();
  TheoryConstants c;
  c.params = params;
  c.scheme = scheme;
  const double horizon = scheme.horizon();
  c.alpha_n = alpha_n(params, horizon);
  c.alpha_limit_rate = alpha_limit_rate(params);
  c.a_theta_h = a_theta_h(params);
  c.ef2_source = ef2_mode;
  c.ef2 = ef2_mode == Ef2Mode::asymptotic ? c.a_theta_h : ef2_quadrature(params, horizon);
  c.lambda_n = c.alpha_n / (params.theta * horizon * std::sqrt(c.ef2));
  c.sigma_h2 = sigma_h2(params);
  return c;
}

BoundBudget bound_budget(const SamplingScheme& scheme, const ModelParams& params, double eta,
                         double dlt) {
  params.validate();
  scheme.validate();
  require_be_range(params.hurst, "bound_budget");
  if (!(eta > 0.0 && eta < 1.0)) {
    throw DomainError("bound_budget: eta must lie in (0, 1), got " + std::to_string(eta));
  }
  if (!(dlt > 0.0 && dlt < 1.0)) {
    throw DomainError("bound_budget: dlt must lie in (0, 1), got " + std::to_string(dlt));
  }
  const double h = params.hurst;
  const auto n = static_cast<double>(scheme.n);
  const double d = scheme.delta;
  const double horizon = n * d;
  BoundBudget b;
  b.eta = eta;
  b.dlt = dlt;
  b.terms = {1.0 / (eta * std::sqrt(horizon)),
             std::sqrt(n) * std::pow(d, 2.0 * h - 0.5) / eta,
             std::pow(horizon, 4.0 * h - 3.0),
             eta,
             std::pow(d, h) / dlt,
             1.0 / (horizon * dlt * dlt),
             dlt};
  for (double t : b.terms) b.total += t;
  return b;
}

RateExponents make_rate_exponents(const ModelParams& params, double alpha, double beta) {
  params.validate();
  const double h = params.hurst;
  if (!(alpha > 0.0 && alpha < h)) {
    throw DomainError("rate exponents: alpha must lie in (0, H), got " + std::to_string(alpha));
  }
  if (!(beta > 0.0 && beta < 4.0 * h - 1.0)) {
    throw DomainError("rate exponents: beta must lie in (0, 4H-1), got " + std::to_string(beta));
  }
  return {alpha, beta, beta <= 1.0};
}

RateExponents rate_exponents_for_gamma(const ModelParams& params, double gamma) {
  params.validate();
  if (!in_gamma_window(params.hurst, gamma)) {
    const auto [lo, hi] = gamma_window(params.hurst);
    throw DomainError("gamma " + std::to_string(gamma) + " is outside the admissible interval (" +
                      std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  const double h = params.hurst;
  const double alpha = 0.5 * std::min(h, (1.0 - gamma) / (2.0 * gamma));
  const double beta = 0.5 * (1.0 / gamma + 4.0 * h - 1.0);
  return make_rate_exponents(params, alpha, beta);
}

BoundBudget bound_budget_specialized(const SamplingScheme& scheme, const ModelParams& params,
                                     const RateExponents& exps) {
  params.validate();
  scheme.validate();
  require_be_range(params.hurst, "bound_budget_specialized");
  const double h = params.hurst;
  const auto n = static_cast<double>(scheme.n);
  const double d = scheme.delta;
  const double al = exps.alpha;
  const double be = exps.beta;
  BoundBudget b;
  b.eta = std::sqrt(n * std::pow(d, be));
  b.dlt = std::pow(d, al);
  b.terms = {1.0 / (n * std::pow(d, 0.5 * (1.0 + be))),
             std::sqrt(std::pow(d, 4.0 * h - 1.0 - be)),
             std::pow(n * d, 4.0 * h - 3.0),
             std::sqrt(n * std::pow(d, be)),
             std::pow(d, h - al),
             1.0 / (n * std::pow(d, 1.0 + 2.0 * al)),
             std::pow(d, al)};
  for (double t : b.terms) b.total += t;
  return b;
}

std::pair<double, double> gamma_window(double hurst) {
  require_be_range(hurst, "gamma_window");
  return {1.0 / (4.0 * hurst - 1.0), 1.0 / (2.0 * hurst)};
}

bool in_gamma_window(double hurst, double gamma) {
  const auto [lo, hi] = gamma_window(hurst);
  return gamma > lo && gamma < hi;
}

BoundBudget report_budget(const SamplingScheme& scheme, const ModelParams& params,
                          std::optional<double> eta, std::optional<double> dlt,
                          std::optional<double> gamma) {
  if (!eta && !dlt && gamma) {
    return bound_budget_specialized(scheme, params, rate_exponents_for_gamma(params, *gamma));
  }
  return bound_budget(scheme, params, eta.value_or(0.1), dlt.value_or(0.1));
}

}  // namespace fou
