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

#include "fou/fou_sim.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fou/errors.hpp"
#include "fou/quadrature.hpp"
#include "fou/specialfn.hpp"

namespace fou {

void ModelParams::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw DomainError("theta must be positive, got " + std::to_string(theta));
  }
  if (!(hurst > 0.5 && hurst < 1.0)) {
    throw DomainError("hurst must lie strictly inside (1/2, 1), got " + std::to_string(hurst));
  }
  if (!std::isfinite(x0)) throw DomainError("x0 must be finite");
}

SamplingScheme SamplingScheme::from_gamma(std::int64_t n, double gamma, int oversample) {
  if (n < 1) throw DomainError("n must be positive");
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  return {n, std::pow(static_cast<double>(n), -gamma), oversample};
}

void SamplingScheme::validate() const {
  if (n < 2) throw DomainError("n must be at least 2, got " + std::to_string(n));
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("delta must be positive, got " + std::to_string(delta));
  }
  if (oversample < 1) throw DomainError("oversample must be at least 1");
}

ObservedPath simulate_from_increments(const ModelParams& params, const SamplingScheme& scheme,
                                      const Eigen::Ref<const Eigen::VectorXd>& fine_increments,
                                      PathMeta meta) {
  if (!(params.theta > 0.0)) throw DomainError("theta must be positive");
  scheme.validate();
  if (fine_increments.size() != scheme.fine_steps()) {
    throw DomainError("simulate_from_increments: expected " + std::to_string(scheme.fine_steps()) +
                      " increments, got " + std::to_string(fine_increments.size()));
  }
  const double decay = std::exp(-params.theta * scheme.fine_step());
  ObservedPath path{params, scheme, Eigen::VectorXd(scheme.n + 1), meta};
  path.x[0] = params.x0;
  double x = params.x0;
  Eigen::Index k = 0;
  for (std::int64_t i = 1; i <= scheme.n; ++i) {
    for (int j = 0; j < scheme.oversample; ++j) x = decay * x + fine_increments[k++];
    path.x[i] = x;
  }
  return path;
}

ObservedPath simulate_path(const ModelParams& params, const SamplingScheme& scheme,
                           const CirculantSampler& sampler, RngSeed seed) {
  params.validate();
  scheme.validate();
  const FbmGrid want = scheme.fine_grid(params.hurst);
  const FbmGrid& have = sampler.grid();
  if (have.count != want.count || have.step != want.step || have.hurst != want.hurst) {
    throw ConsistencyError("simulate_path: sampler grid does not match the scheme");
  }
  const IncrementSeries incs = sampler.sample(seed);
  return simulate_from_increments(params, scheme, incs.values, {incs.method, incs.fallback, seed});
}

ObservedPath simulate_path(const ModelParams& params, const SamplingScheme& scheme, RngSeed seed) {
  params.validate();
  scheme.validate();
  if (scheme.n > SamplingScheme::kMaxFineSteps / scheme.oversample) {
    throw SizeError("simulate_path: n*oversample exceeds 2^26 fine steps");
  }
  const CirculantSampler sampler(scheme.fine_grid(params.hurst));
  return simulate_path(params, scheme, sampler, seed);
}

double exact_second_moment(const ModelParams& params, double t) {
  params.validate();
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("exact_second_moment: t must be positive, got " + std::to_string(t));
  }
  const double theta = params.theta;
  const double h = params.hurst;
  auto kernel = [&](double z) {
    return std::exp(-theta * z) - std::exp(theta * z - 2.0 * theta * t);
  };
  const auto r = quad::integrate_power_weighted(kernel, 2.0 * h - 1.0, t, {0.0, 1e-12, 20000});
  return params.x0 * params.x0 * std::exp(-2.0 * theta * t) + h * (2.0 * h - 1.0) / theta * r.value;
}

double second_moment_bound(const ModelParams& params) {
  params.validate();
  const double h = params.hurst;
  return 2.0 * (params.x0 * params.x0 +
                h * specialfn::gamma(2.0 * h) / std::pow(params.theta, 2.0 * h));
}

void write_path_csv(std::ostream& os, const ObservedPath& path) {
  os << "i,t,x\n";
  char buf[96];
  for (Eigen::Index i = 0; i < path.x.size(); ++i) {
    const double t = static_cast<double>(i) * path.scheme.delta;
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", static_cast<long long>(i), t, path.x[i]);
    os << buf;
  }
}

PathCsv read_path_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DataError("path csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "i,t,x") throw DataError("path csv: expected header 'i,t,x', got '" + line + "'");
  std::vector<double> ts, xs;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string i_s, t_s, x_s;
    if (!std::getline(fields, i_s, ',') || !std::getline(fields, t_s, ',') ||
        !std::getline(fields, x_s)) {
      throw DataError("path csv: malformed row " + std::to_string(row + 1));
    }
    try {
      if (std::stoll(i_s) != static_cast<long long>(row)) {
        throw DataError("path csv: index column out of sequence at row " + std::to_string(row + 1));
      }
      ts.push_back(std::stod(t_s));
      xs.push_back(std::stod(x_s));
    } catch (const std::logic_error&) {
      throw DataError("path csv: unparsable number at row " + std::to_string(row + 1));
    }
    ++row;
  }
  if (xs.size() < 3) throw DataError("path csv: need at least 3 observations");
  if (ts[0] != 0.0) throw DataError("path csv: time column must start at 0");
  const double delta = ts[1] - ts[0];
  if (!(delta > 0.0)) throw DataError("path csv: time column must be increasing");
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double expect = static_cast<double>(i) * delta;
    if (std::abs(ts[i] - expect) > 1e-9 * std::max(1.0, expect)) {
      throw DataError("path csv: time column is not equidistant at row " + std::to_string(i + 1));
    }
  }
  PathCsv out;
  out.x = Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  out.delta = delta;
  return out;
}

}  // namespace fou
