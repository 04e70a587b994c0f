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

#include "fou/lse.hpp"

#include <cmath>
#include <string>

#include "fou/errors.hpp"
#include "fou/summation.hpp"
#include "fou/theory.hpp"

namespace fou {

EstimateResult estimate(const Eigen::Ref<const Eigen::VectorXd>& x, double delta) {
  if (x.size() < 3) {
    throw DomainError("estimate: need n >= 2 observations beyond x[0], got " +
                      std::to_string(x.size() - 1));
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("estimate: delta must be positive");
  CompensatedSum cross;
  CompensatedSum square;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    const double prev = x[i - 1];
    cross.add(prev * (x[i] - prev));
    square.add(prev * prev);
  }
  EstimateResult r;
  r.n = x.size() - 1;
  r.delta = delta;
  r.numerator = -cross.value();
  r.denominator = delta * square.value();
  if (!(r.denominator > 0.0)) {
    throw DegeneratePathError("estimate: sum of squared observations is zero");
  }
  if (!std::isfinite(r.numerator) || !std::isfinite(r.denominator)) {
    throw DataError("estimate: non-finite path values");
  }
  r.theta_hat = r.numerator / r.denominator;
  return r;
}

EstimateResult estimate(const ObservedPath& path) { return estimate(path.x, path.scheme.delta); }

double studentize(const EstimateResult& est, const ModelParams& truth,
                  const TheoryConstants& consts) {
  if (est.n != consts.scheme.n || est.delta != consts.scheme.delta) {
    throw ConsistencyError("studentize: estimate and constants refer to different schemes");
  }
  if (truth.theta != consts.params.theta || truth.hurst != consts.params.hurst) {
    throw ConsistencyError("studentize: constants were computed for different parameters");
  }
  const double horizon = static_cast<double>(est.n) * est.delta;
  return consts.lambda_n * std::sqrt(horizon) * (est.theta_hat - truth.theta);
}

}  // namespace fou
