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

#include "fou/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "fou/errors.hpp"
#include "fou/lse.hpp"
#include "fou/specialfn.hpp"
#include "fou/summation.hpp"

namespace fou {

double ks_to_std_normal(std::span<const double> sample) {
  if (sample.empty()) throw DomainError("ks_to_std_normal: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  for (double v : sorted) {
    if (std::isnan(v)) throw DataError("ks_to_std_normal: NaN in sample");
  }
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = specialfn::std_normal_cdf(sorted[i]);
    const double upper = static_cast<double>(i + 1) / n - cdf;
    const double lower = cdf - static_cast<double>(i) / n;
    d = std::max({d, upper, lower});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto na = static_cast<double>(x.size());
  const auto nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) {
    // Dual (theta-function) form converges quickly for small λ.
    const double pi = std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi * pi / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * pi) / lambda;
    return 1.0 - cdf;
  }
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_two_sample_pvalue(double statistic, std::size_t size_a, std::size_t size_b) {
  const double ne = static_cast<double>(size_a) * static_cast<double>(size_b) /
                    static_cast<double>(size_a + size_b);
  const double root = std::sqrt(ne);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * statistic);
}

void McConfig::validate() const {
  params.validate();
  if (!(params.hurst < 0.75)) {
    throw ConfigError("mc: H must be below 3/4 for the normalizing constants, got " +
                      std::to_string(params.hurst));
  }
  if (schedule.empty()) throw ConfigError("mc: schedule is empty");
  if (replications < kMinReplications) {
    throw ConfigError("mc: replications must be at least " + std::to_string(kMinReplications));
  }
  for (const auto& s : schedule) {
    s.validate();
    if (s.n > SamplingScheme::kMaxFineSteps / s.oversample) {
      throw SizeError("mc: n*oversample exceeds 2^26 fine steps for n = " + std::to_string(s.n));
    }
  }
  if (gamma && !in_gamma_window(params.hurst, *gamma)) {
    const auto [lo, hi] = gamma_window(params.hurst);
    throw ConfigError("mc: gamma " + std::to_string(*gamma) +
                      " is outside the admissible interval (" + std::to_string(lo) + ", " +
                      std::to_string(hi) + ")");
  }
  if (eta && !(*eta > 0.0 && *eta < 1.0)) throw ConfigError("mc: eta must lie in (0, 1)");
  if (dlt && !(*dlt > 0.0 && *dlt < 1.0)) throw ConfigError("mc: dlt must lie in (0, 1)");
}

namespace {

struct Replicate {
  double theta_hat = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
  bool fallback = false;
};

std::vector<Replicate> replicate(const McConfig& config, const SamplingScheme& scheme,
                                 unsigned threads) {
  const CirculantSampler sampler(scheme.fine_grid(config.params.hurst));
  const auto count = config.replications;
  std::vector<Replicate> out(static_cast<std::size_t>(count));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::int64_t r = next.fetch_add(1);
      if (r >= count) return;
      try {
        const RngSeed seed{config.base_seed, static_cast<std::uint64_t>(r)};
        const ObservedPath path = simulate_path(config.params, scheme, sampler, seed);
        auto& slot = out[static_cast<std::size_t>(r)];
        slot.fallback = path.meta.fallback;
        try {
          slot.theta_hat = estimate(path).theta_hat;
        } catch (const DegeneratePathError&) {
          slot.degenerate = true;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

SchemeRecord summarize(const McConfig& config, const SamplingScheme& scheme,
                       const std::vector<Replicate>& reps) {
  const TheoryConstants consts = constants(config.params, scheme, config.ef2_mode);
  const double theta = config.params.theta;
  const double horizon = scheme.horizon();
  const double root_t = std::sqrt(horizon);

  SchemeRecord rec;
  rec.n = scheme.n;
  rec.delta = scheme.delta;
  rec.horizon = horizon;
  rec.oversample = scheme.oversample;
  rec.lambda_n = consts.lambda_n;
  rec.sigma_h2 = consts.sigma_h2;
  rec.theta_hat.reserve(reps.size());

  std::vector<double> valid;
  valid.reserve(reps.size());
  for (const auto& r : reps) {
    rec.theta_hat.push_back(r.theta_hat);
    if (r.fallback) ++rec.fallback_count;
    if (r.degenerate) {
      ++rec.degenerate_count;
    } else {
      valid.push_back(r.theta_hat);
    }
  }
  if (rec.degenerate_count * 1000 >= config.replications) {
    throw DataError("mc: " + std::to_string(rec.degenerate_count) + " of " +
                    std::to_string(config.replications) +
                    " replications produced a degenerate path (limit is 0.1%) at n = " +
                    std::to_string(scheme.n));
  }
  const auto count = static_cast<double>(valid.size());

  CompensatedSum sum;
  for (double v : valid) sum.add(v);
  rec.mean_theta_hat = sum.value() / count;
  CompensatedSum squares;
  for (double v : valid) {
    const double dev = v - rec.mean_theta_hat;
    squares.add(dev * dev);
  }
  const double variance = squares.value() / (count - 1.0);
  rec.sd_theta_hat = std::sqrt(variance);
  rec.bias = rec.mean_theta_hat - theta;
  rec.var_ratio = horizon * variance / consts.sigma_h2;

  std::vector<double> studentized;
  studentized.reserve(valid.size());
  for (double v : valid) studentized.push_back(consts.lambda_n * root_t * (v - theta));
  rec.ks_distance = ks_to_std_normal(studentized);

  rec.budget = report_budget(scheme, config.params, config.eta, config.dlt, config.gamma);
  return rec;
}

}  // namespace

McReport run(const McConfig& config, unsigned threads) {
  config.validate();
  McReport report;
  report.config = config;
  for (const auto& scheme : config.schedule) {
    const auto start = std::chrono::steady_clock::now();
    const auto reps = replicate(config, scheme, threads);
    SchemeRecord rec = summarize(config, scheme, reps);
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.records.push_back(std::move(rec));
  }
  return report;
}

unsigned resolve_threads(std::optional<unsigned> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("FOU_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace fou
