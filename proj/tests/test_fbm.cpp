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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fou/errors.hpp"
#include "fou/fbm.hpp"
#include "fou/montecarlo.hpp"

using namespace fou;

namespace {

// Direct evaluation of ½(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H})δ^{2H} in long double.
double autocov_reference(double step, double h, long k) {
  const long double e = 2.0L * h;
  auto p = [&](long j) { return std::pow(std::fabs(static_cast<long double>(j)), e); };
  return static_cast<double>(0.5L * (p(k + 1) - 2.0L * p(k) + p(k - 1)) *
                             std::pow(static_cast<long double>(step), e));
}

}  // namespace

TEST_CASE("increment autocovariance") {
  SUBCASE("lag zero is the variance") {
    for (double h : {0.55, 0.7, 0.9}) {
      const FbmGrid g{0.01, 100, h};
      CHECK(increment_autocov(g, 0) == doctest::Approx(std::pow(0.01, 2 * h)).epsilon(1e-14));
    }
  }
  SUBCASE("frozen value at lag one") {
    CHECK(increment_autocov({1.0, 8, 0.7}, 1) == doctest::Approx(0.319507910772894259).epsilon(1e-14));
  }
  SUBCASE("brownian increments are uncorrelated") {
    for (long k = 1; k < 50; ++k) CHECK(std::abs(increment_autocov({1.0, 64, 0.5}, k)) < 1e-14);
  }
  SUBCASE("symmetric and matches the long-double reference") {
    const FbmGrid g{0.125, 1 << 12, 0.74};
    for (long k = 0; k < 4000; k += 37) {
      CHECK(increment_autocov(g, k) == increment_autocov(g, -k));
      CHECK(increment_autocov(g, k) == doctest::Approx(autocov_reference(0.125, 0.74, k)).epsilon(1e-10));
    }
  }
  SUBCASE("far lags follow H(2H-1)k^{2H-2}") {
    const double h = 0.6;
    const long k = 1000000;
    const double asym = h * (2 * h - 1) * std::pow(static_cast<double>(k), 2 * h - 2);
    CHECK(increment_autocov({1.0, 2, h}, k) == doctest::Approx(asym).epsilon(1e-6));
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(FbmGrid({0.0, 10, 0.7}).validate(), DomainError);
  CHECK_THROWS_AS(FbmGrid({0.1, 0, 0.7}).validate(), DomainError);
  CHECK_THROWS_AS(FbmGrid({0.1, 10, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(FbmGrid({0.1, 10, 0.0}).validate(), DomainError);
  CHECK_NOTHROW(FbmGrid({0.1, 10, 0.3}).validate());
}

TEST_CASE("embedding eigenvalues stay nonnegative for H in (1/2, 3/4]") {
  for (double h : {0.55, 0.6, 0.7, 0.74}) {
    for (int p = 8; p <= 14; ++p) {
      const FbmGrid g{1.0, std::int64_t{1} << p, h};
      const Eigen::VectorXd lam = embedding_eigenvalues(g);
      CHECK(lam.size() == 2 * g.count);
      CHECK(lam.minCoeff() >= -CirculantSampler::kNegativeTolerance * lam.maxCoeff());
      CirculantSampler s(g);
      CHECK_FALSE(s.uses_fallback());
    }
  }
}

TEST_CASE("embedding row is the symmetric circulant of the autocovariance") {
  const FbmGrid g{0.5, 10, 0.65};
  const Eigen::VectorXd row = embedding_row(g);
  REQUIRE(row.size() == 32);
  for (long k = 0; k <= 16; ++k) CHECK(row[k] == doctest::Approx(increment_autocov(g, k)));
  for (long k = 1; k < 16; ++k) CHECK(row[32 - k] == row[k]);
}

TEST_CASE("circulant samples have the target covariance") {
  const FbmGrid g{1.0 / 64, 16, 0.75};
  const int draws = 200000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(g.count, g.count);
  CirculantSampler s(g);
  for (int r = 0; r < draws; ++r) {
    const Eigen::VectorXd v = s.sample({99, static_cast<std::uint64_t>(r)}).values;
    acc.selfadjointView<Eigen::Lower>().rankUpdate(v);
  }
  acc = acc.selfadjointView<Eigen::Lower>();
  acc /= draws;
  int over = 0;
  double worst = 0.0;
  for (long i = 0; i < g.count; ++i) {
    for (long j = 0; j <= i; ++j) {
      const double cij = increment_autocov(g, i - j);
      const double se = std::sqrt((increment_autocov(g, 0) * increment_autocov(g, 0) + cij * cij) / draws);
      const double z = std::abs(acc(i, j) - cij) / se;
      over += z > 3.0;
      worst = std::max(worst, z);
    }
  }
  // 136 distinct entries; at the 3 SE level roughly 0.4 are expected to exceed.
  CHECK(over <= 3);
  CHECK(worst < 4.5);
}

TEST_CASE("cholesky sampler matches the target covariance") {
  const FbmGrid g{1.0 / 16, 16, 0.75};
  const int draws = 200000;
  CholeskySampler s(g);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(g.count, g.count);
  for (int r = 0; r < draws; ++r) {
    const Eigen::VectorXd v = s.sample({5, static_cast<std::uint64_t>(r)}).values;
    acc.selfadjointView<Eigen::Lower>().rankUpdate(v);
  }
  acc = acc.selfadjointView<Eigen::Lower>();
  acc /= draws;
  int over = 0;
  for (long i = 0; i < g.count; ++i) {
    for (long j = 0; j <= i; ++j) {
      const double cij = increment_autocov(g, i - j);
      const double c0 = increment_autocov(g, 0);
      over += std::abs(acc(i, j) - cij) > 3.0 * std::sqrt((c0 * c0 + cij * cij) / draws);
    }
  }
  CHECK(over <= 3);
}

TEST_CASE("circulant and cholesky marginals agree") {
  const FbmGrid g{0.1, 64, 0.6};
  const int draws = 10000;
  CirculantSampler circ(g);
  CholeskySampler chol(g);
  std::vector<Eigen::VectorXd> a, b;
  for (int r = 0; r < draws; ++r) {
    a.push_back(circ.sample({1, static_cast<std::uint64_t>(r)}).values);
    b.push_back(chol.sample({2, static_cast<std::uint64_t>(r)}).values);
  }
  double min_p = 1.0;
  for (long j = 0; j < g.count; ++j) {
    std::vector<double> ca(draws), cb(draws);
    for (int r = 0; r < draws; ++r) {
      ca[r] = a[r][j];
      cb[r] = b[r][j];
    }
    min_p = std::min(min_p, ks_two_sample_pvalue(ks_two_sample(ca, cb), draws, draws));
  }
  // Bonferroni over the 64 coordinates at family level 0.001.
  CHECK(min_p * g.count > 0.001);
}

TEST_CASE("sampling is deterministic in the seed") {
  const FbmGrid g{0.01, 300, 0.7};
  const auto a = sample_circulant(g, {7, 1});
  const auto b = sample_circulant(g, {7, 1});
  const auto c = sample_circulant(g, {7, 2});
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.values.size() == 300);
  CHECK(a.method == SamplerMethod::circulant);
  CHECK_FALSE(a.fallback);
  const auto d = sample_cholesky(g, {7, 1});
  CHECK(d.method == SamplerMethod::cholesky);
  CHECK(d.values.size() == 300);
}

TEST_CASE("cholesky size guard") {
  CHECK_THROWS_AS(CholeskySampler({1.0, CholeskySampler::kMaxCholeskyCount + 1, 0.7}), SizeError);
}

TEST_CASE("partial sums start at zero") {
  IncrementSeries s;
  s.grid = {1.0, 4, 0.7};
  s.values = Eigen::Vector4d(1.0, -2.0, 0.5, 3.0);
  const Eigen::VectorXd b = partial_sums(s);
  REQUIRE(b.size() == 5);
  CHECK(b[0] == 0.0);
  CHECK(b[1] == 1.0);
  CHECK(b[2] == -1.0);
  CHECK(b[3] == -0.5);
  CHECK(b[4] == 2.5);
}

TEST_CASE("fbm variance scales as t^{2H}") {
  const FbmGrid g{1.0 / 128, 128, 0.7};
  CirculantSampler s(g);
  const int draws = 40000;
  double acc = 0.0;
  for (int r = 0; r < draws; ++r) {
    const double bt = s.sample({3, static_cast<std::uint64_t>(r)}).values.sum();
    acc += bt * bt;
  }
  // Var(B_1) = 1; the estimator has SE sqrt(2/draws).
  CHECK(std::abs(acc / draws - 1.0) < 4.0 * std::sqrt(2.0 / draws));
}
