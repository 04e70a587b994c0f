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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "fou/report_io.hpp"

namespace fs = std::filesystem;
using fou::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fou_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

int lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("simulate writes the golden CSV") {
  const auto r = call({"simulate", "--theta", "1", "--hurst", "0.7", "--n", "20", "--delta",
                       "0.1", "--seed", "42", "--stream", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(fs::path(FOU_FIXTURE_DIR) / "simulate_golden.csv"));

  const auto path = scratch("sim.csv");
  const auto f = call({"simulate", "--theta", "1", "--hurst", "0.7", "--n", "20", "--delta",
                       "0.1", "--seed", "42", "--stream", "3", "--out", path.string()});
  CHECK(f.code == 0);
  CHECK(f.out.empty());
  CHECK(slurp(path) == r.out);
}

TEST_CASE("simulate validation") {
  const auto missing = call({"simulate", "--hurst", "0.7", "--n", "20", "--delta", "0.1"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--theta") != std::string::npos);
  CHECK(lines(missing.err) == 1);

  const auto both = call({"simulate", "--theta", "1", "--hurst", "0.7", "--n", "20", "--delta",
                          "0.1", "--gamma", "0.6"});
  CHECK(both.code == 2);
  const auto neither = call({"simulate", "--theta", "1", "--hurst", "0.7", "--n", "20"});
  CHECK(neither.code == 2);
  const auto bad_h = call({"simulate", "--theta", "1", "--hurst", "1.2", "--n", "20", "--delta", "0.1"});
  CHECK(bad_h.code == 2);
  CHECK(lines(bad_h.err) == 1);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
}

TEST_CASE("simulate warns about bounds for H at or above 3/4") {
  const auto r = call({"simulate", "--theta", "1", "--hurst", "0.8", "--n", "20", "--delta",
                       "0.1", "--report-bounds"});
  CHECK(r.code == 0);
  CHECK(r.err.find("H < 3/4") != std::string::npos);
  const auto ok = call({"simulate", "--theta", "1", "--hurst", "0.7", "--n", "1000", "--gamma",
                        "0.6", "--report-bounds"});
  CHECK(ok.code == 0);
  CHECK(ok.err.find("bounds:") != std::string::npos);
}

TEST_CASE("estimate reads the CSV") {
  const auto r = call({"estimate", "--in", (fs::path(FOU_FIXTURE_DIR) / "simulate_golden.csv").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("theta_hat"));
  CHECK(j["n"] == 20);
  const auto missing = call({"estimate", "--in", scratch("nope.csv").string() + ".absent"});
  CHECK(missing.code == 1);

  const auto flat = scratch("flat.csv");
  std::ofstream(flat) << "i,t,x\n0,0,0\n1,0.1,0\n2,0.2,0\n3,0.3,0\n";
  const auto degenerate = call({"estimate", flat.string()});
  CHECK(degenerate.code == 1);
  CHECK(lines(degenerate.err) == 1);
}

TEST_CASE("theory output schema and guards") {
  const auto r = call({"theory", "--theta", "1", "--hurst", "0.7", "--n", "1000", "--gamma", "0.6"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  std::set<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.insert(k);
  CHECK(keys == std::set<std::string>{"alpha_n", "alpha_limit_rate", "a_theta_h", "ef2",
                                      "ef2_source", "lambda_n", "sigma_h2", "budget"});
  CHECK(j["ef2_source"] == "asymptotic");
  CHECK(j["budget"]["terms"].size() == 7);

  const auto quad = call({"theory", "--theta", "1", "--hurst", "0.6", "--n", "100", "--delta",
                          "0.1", "--ef2", "quadrature", "--eta", "0.2", "--dlt", "0.3"});
  REQUIRE(quad.code == 0);
  const auto q = nlohmann::json::parse(quad.out);
  CHECK(q["ef2_source"] == "quadrature");
  CHECK(q["budget"]["eta"] == 0.2);

  const auto pole = call({"theory", "--theta", "1", "--hurst", "0.75", "--n", "100", "--delta", "0.1"});
  CHECK(pole.code == 2);
  CHECK(pole.err.find("pole") != std::string::npos);

  const auto outside = call({"theory", "--theta", "1", "--hurst", "0.7", "--n", "100", "--gamma", "0.5"});
  CHECK(outside.code == 2);
  CHECK(outside.err.find("0.555556") != std::string::npos);
  CHECK(outside.err.find("0.714286") != std::string::npos);

  CHECK(call({"theory", "--theta", "1", "--hurst", "0.7", "--n", "100", "--delta", "0.1",
              "--ef2", "exact"}).code == 2);
}

TEST_CASE("mc subcommand") {
  const auto cfg = scratch("mc.json");
  const auto json_out = scratch("mc_out.json");
  const auto csv_out = scratch("mc_out.csv");
  std::ofstream(cfg) << R"({"model": {"theta": 1.0, "hurst": 0.7, "x0": 0.0},
    "schedule": {"n": [16, 32], "gamma": 0.6}, "replications": 100, "seed": 11})";
  const auto r = call({"mc", cfg.string(), "--out-json", json_out.string(), "--out-csv",
                       csv_out.string(), "--threads", "2"});
  REQUIRE(r.code == 0);
  const auto report = nlohmann::json::parse(slurp(json_out));
  CHECK(report["records"].size() == 2);
  const std::string csv = slurp(csv_out);
  CHECK(csv.substr(0, csv.find('\n')) == fou::kReportCsvHeader);
  CHECK(std::string(fou::kReportCsvHeader) ==
        "n,delta,T,mean,sd,bias,ks,var_ratio,degenerate,budget_total,seconds");
  CHECK(lines(csv) == 3);

  const auto empty = scratch("empty.json");
  std::ofstream(empty) << R"({"model": {"theta": 1.0, "hurst": 0.7},
    "schedule": {"n": [], "gamma": 0.6}, "replications": 100, "seed": 1})";
  CHECK(call({"mc", empty.string()}).code == 2);

  const auto unknown = scratch("unknown.json");
  std::ofstream(unknown) << R"({"model": {"theta": 1.0, "hurst": 0.7}, "colour": 1,
    "schedule": {"n": [16], "gamma": 0.6}, "replications": 100, "seed": 1})";
  const auto u = call({"mc", unknown.string()});
  CHECK(u.code == 2);
  CHECK(u.err.find("colour") != std::string::npos);

  const auto broken = scratch("broken.json");
  std::ofstream(broken) << "{not json";
  CHECK(call({"mc", broken.string()}).code == 2);
  CHECK(call({"mc", scratch("absent.json").string()}).code == 2);
}
