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

#include <cmath>
#include <sstream>

#include "fou/errors.hpp"
#include "fou/fou_sim.hpp"
#include "fou/specialfn.hpp"

using namespace fou;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModelParams({0.0, 0.7, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({1.0, 0.5, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({1.0, 1.0, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({1.0, 0.7, std::nan("")}).validate(), DomainError);
  CHECK_NOTHROW(ModelParams({2.0, 0.8, 1.0}).validate());

  CHECK_THROWS_AS(SamplingScheme({1, 0.1, 8}).validate(), DomainError);
  CHECK_THROWS_AS(SamplingScheme({10, 0.0, 8}).validate(), DomainError);
  CHECK_THROWS_AS(SamplingScheme({10, 0.1, 0}).validate(), DomainError);
  CHECK_THROWS_AS(simulate_path({1.0, 0.7, 0.0}, {std::int64_t{1} << 24, 0.1, 8}, {0, 0}), SizeError);

  const auto s = SamplingScheme::from_gamma(10000, 0.5);
  CHECK(s.delta == doctest::Approx(0.01));
  CHECK(s.horizon() == doctest::Approx(100.0));
  CHECK(s.fine_steps() == 80000);
}

TEST_CASE("zero noise gives exact exponential decay") {
  const ModelParams p{1.5, 0.7, 2.0};
  const SamplingScheme s{50, 0.1, 8};
  const auto path = simulate_from_increments(p, s, Eigen::VectorXd::Zero(s.fine_steps()));
  REQUIRE(path.x.size() == 51);
  for (long i = 0; i <= 50; ++i) {
    CHECK(path.x[i] == doctest::Approx(2.0 * std::exp(-1.5 * 0.1 * i)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(simulate_from_increments(p, s, Eigen::VectorXd::Zero(7)), DomainError);
}

TEST_CASE("exact second moment") {
  SUBCASE("frozen values") {
    // Cell-exact Riemann sum of the double integral, mesh 1e-4.
    CHECK(exact_second_moment({1.0, 0.7, 0.0}, 5.0) == doctest::Approx(0.61956764481).epsilon(1e-9));
    CHECK(exact_second_moment({1.0, 0.7, 0.0}, 20.0) == doctest::Approx(0.6210846720604).epsilon(1e-9));
  }
  SUBCASE("starts at x0 squared and approaches the stationary value") {
    const ModelParams p{0.8, 0.65, 1.3};
    CHECK(exact_second_moment(p, 1e-9) == doctest::Approx(1.69).epsilon(1e-6));
    CHECK_THROWS_AS(exact_second_moment(p, 0.0), DomainError);
    const double stat = specialfn::gamma(2 * p.hurst + 1) / (2.0 * std::pow(p.theta, 2 * p.hurst));
    CHECK(exact_second_moment(p, 200.0) == doctest::Approx(stat).epsilon(1e-8));
  }
  SUBCASE("dominated by the bound") {
    for (double th : {0.3, 1.0, 4.0}) {
      for (double h : {0.55, 0.7, 0.9}) {
        const ModelParams p{th, h, 0.5};
        for (double t : {0.1, 1.0, 10.0, 50.0}) CHECK(exact_second_moment(p, t) <= second_moment_bound(p));
      }
    }
  }
}

TEST_CASE("simulated second moment matches the exact value") {
  // Exponential-Euler on the fine grid carries a relative bias near θδ = 0.3%.
  const ModelParams p{1.0, 0.7, 0.0};
  const SamplingScheme s{800, 0.025, 8};
  CirculantSampler sampler(s.fine_grid(p.hurst));
  const int draws = 4000;
  double acc = 0.0;
  for (int r = 0; r < draws; ++r) {
    const double xt = simulate_path(p, s, sampler, {17, static_cast<std::uint64_t>(r)}).x[s.n];
    acc += xt * xt;
  }
  const double exact = exact_second_moment(p, s.horizon());
  const double se = exact * std::sqrt(2.0 / draws);
  CHECK(std::abs(acc / draws - exact) < 4.0 * se + 0.005 * exact);
}

TEST_CASE("brownian limit reproduces the classical OU variance") {
  // The H = 1/2 case is outside the model domain, so it goes through the increments hook.
  const ModelParams p{2.0, 0.5, 0.0};
  const SamplingScheme s{64, 1.0 / 32, 16};
  const FbmGrid g = s.fine_grid(0.5);
  CirculantSampler sampler(g);
  const int draws = 20000;
  double acc = 0.0;
  for (int r = 0; r < draws; ++r) {
    const auto inc = sampler.sample({8, static_cast<std::uint64_t>(r)});
    const double xt = simulate_from_increments(p, s, inc.values).x[s.n];
    acc += xt * xt;
  }
  const double t = s.horizon();
  const double exact = -std::expm1(-2.0 * p.theta * t) / (2.0 * p.theta);
  CHECK(std::abs(acc / draws - exact) < 4.0 * exact * std::sqrt(2.0 / draws) + 0.04 * exact);
}

TEST_CASE("paths converge as the oversampling grows") {
  const ModelParams p{1.0, 0.7, 0.0};
  // Share the fine noise: the coarse run aggregates pairs of finest increments.
  const SamplingScheme fine{40, 0.05, 64};
  const auto inc = sample_circulant(fine.fine_grid(p.hurst), {4, 0});
  const Eigen::VectorXd x_ref = simulate_from_increments(p, fine, inc.values).x;
  double prev = INFINITY;
  for (int m : {4, 8, 16, 32}) {
    const int agg = 64 / m;
    Eigen::VectorXd coarse(fine.n * m);
    for (long i = 0; i < coarse.size(); ++i) coarse[i] = inc.values.segment(i * agg, agg).sum();
    const Eigen::VectorXd x = simulate_from_increments(p, {fine.n, fine.delta, m}, coarse).x;
    const double err = (x - x_ref).cwiseAbs().maxCoeff();
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("simulate_path metadata and determinism") {
  const ModelParams p{1.0, 0.7, 0.3};
  const SamplingScheme s{100, 0.1, 8};
  const auto a = simulate_path(p, s, {1, 2});
  const auto b = simulate_path(p, s, {1, 2});
  CHECK(a.x == b.x);
  CHECK(a.x[0] == 0.3);
  CHECK(a.meta.method == SamplerMethod::circulant);
  CHECK(a.meta.seed == RngSeed{1, 2});
  CirculantSampler wrong({0.1, 800, 0.7});
  CHECK_THROWS_AS(simulate_path(p, s, wrong, {1, 2}), ConsistencyError);
}

TEST_CASE("path csv round trip") {
  const auto path = simulate_path({1.0, 0.7, 0.0}, {20, 0.1, 8}, {3, 3});
  std::stringstream ss;
  write_path_csv(ss, path);
  CHECK(ss.str().rfind("i,t,x\n", 0) == 0);
  const auto back = read_path_csv(ss);
  CHECK(back.x == path.x);
  CHECK(back.delta == doctest::Approx(0.1).epsilon(1e-14));

  std::istringstream bad_header("a,b,c\n0,0,1\n1,0.1,2\n2,0.2,3\n");
  CHECK_THROWS_AS(read_path_csv(bad_header), DataError);
  std::istringstream short_csv("i,t,x\n0,0,1\n1,0.1,2\n");
  CHECK_THROWS_AS(read_path_csv(short_csv), DataError);
  std::istringstream uneven("i,t,x\n0,0,1\n1,0.1,2\n2,0.3,3\n");
  CHECK_THROWS_AS(read_path_csv(uneven), DataError);
}
