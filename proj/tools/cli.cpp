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

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fou/errors.hpp"
#include "fou/fou_sim.hpp"
#include "fou/lse.hpp"
#include "fou/montecarlo.hpp"
#include "fou/report_io.hpp"
#include "fou/theory.hpp"

namespace fou::cli {

namespace {

struct SchemeFlags {
  double theta = 0.0;
  double hurst = 0.0;
  std::int64_t n = 0;
  std::optional<double> delta;
  std::optional<double> gamma;
  int oversample = 8;
};

void add_model_flags(CLI::App* cmd, SchemeFlags& f) {
  cmd->add_option("--theta", f.theta, "drift parameter theta > 0")->required();
  cmd->add_option("--hurst", f.hurst, "Hurst index H")->required();
  cmd->add_option("--n", f.n, "number of observations after t_0")->required();
  auto* d = cmd->add_option("--delta", f.delta, "observation step");
  auto* g = cmd->add_option("--gamma", f.gamma, "use delta = n^-gamma");
  d->excludes(g);
  g->excludes(d);
}

SamplingScheme scheme_of(const SchemeFlags& f) {
  if (!f.delta && !f.gamma) throw ValidationError("one of --delta or --gamma is required");
  if (f.gamma) return SamplingScheme::from_gamma(f.n, *f.gamma, f.oversample);
  return {f.n, *f.delta, f.oversample};
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open '" + path + "' for writing");
  file << body;
  if (!file) throw DataError("failed writing '" + path + "'");
}

int cmd_simulate(const SchemeFlags& f, double x0, std::uint64_t seed, std::uint64_t stream,
                 const std::string& out_path, bool report_bounds, std::ostream& out,
                 std::ostream& err) {
  const ModelParams params{f.theta, f.hurst, x0};
  params.validate();
  const SamplingScheme scheme = scheme_of(f);
  scheme.validate();
  if (report_bounds) {
    if (params.hurst >= 0.75) {
      err << "warning: the Berry-Esseen bounds require H < 3/4; bound reporting skipped for H = "
          << params.hurst << '\n';
    } else {
      const BoundBudget b = report_budget(scheme, params, std::nullopt, std::nullopt,
                                          f.gamma && in_gamma_window(params.hurst, *f.gamma)
                                              ? f.gamma
                                              : std::nullopt);
      err << "bounds: " << to_json(b).dump() << '\n';
    }
  }
  const ObservedPath path = simulate_path(params, scheme, RngSeed{seed, stream});
  std::ostringstream csv;
  write_path_csv(csv, path);
  if (out_path.empty() || out_path == "-") {
    out << csv.str();
  } else {
    write_text_file(out_path, csv.str());
  }
  return kOk;
}

int cmd_estimate(const std::string& in_path, std::ostream& out) {
  PathCsv data;
  if (in_path.empty() || in_path == "-") {
    data = read_path_csv(std::cin);
  } else {
    std::ifstream file(in_path);
    if (!file) throw DataError("cannot open '" + in_path + "'");
    data = read_path_csv(file);
  }
  out << to_json(estimate(data.x, data.delta)).dump(2) << '\n';
  return kOk;
}

int cmd_theory(const SchemeFlags& f, const std::string& ef2, std::optional<double> eta,
               std::optional<double> dlt, std::ostream& out) {
  const ModelParams params{f.theta, f.hurst, 0.0};
  params.validate();
  if (!(params.hurst < 0.75)) {
    throw DomainError("H = " + std::to_string(params.hurst) +
                      " is not below 3/4: A(theta,H) and sigma_H^2 have a pole at H = 3/4 "
                      "(Gamma(3-4H))");
  }
  if (f.gamma && !in_gamma_window(params.hurst, *f.gamma)) {
    const auto [lo, hi] = gamma_window(params.hurst);
    std::ostringstream msg;
    msg.precision(6);
    msg << "--gamma " << *f.gamma << " is outside the admissible interval (1/(4H-1), 1/(2H)) = ("
        << lo << ", " << hi << ")";
    throw DomainError(msg.str());
  }
  const SamplingScheme scheme = scheme_of(f);
  scheme.validate();
  const TheoryConstants consts = constants(params, scheme, parse_ef2_mode(ef2));
  const BoundBudget budget = report_budget(scheme, params, eta, dlt, f.gamma);
  out << theory_json(consts, budget).dump(2) << '\n';
  return kOk;
}

int cmd_mc(const std::string& config_path, std::optional<unsigned> threads_flag,
           const std::string& json_flag, const std::string& csv_flag, std::ostream& out) {
  std::ifstream file(config_path);
  if (!file) throw ValidationError("cannot open config '" + config_path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig rc = parse_run_config(doc);
  const unsigned threads = resolve_threads(threads_flag ? threads_flag : rc.threads);
  if (!json_flag.empty()) rc.json_path = json_flag;
  if (!csv_flag.empty()) rc.csv_path = csv_flag;

  const McReport report = run(rc.mc, threads);
  const std::string json_text = to_json(report).dump(2) + "\n";
  if (rc.json_path) {
    write_text_file(*rc.json_path, json_text);
  } else {
    out << json_text;
  }
  if (rc.csv_path) {
    std::ostringstream csv;
    write_report_csv(csv, report);
    write_text_file(*rc.csv_path, csv.str());
  }
  return kOk;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Ornstein-Uhlenbeck simulation and least-squares drift estimation",
               "fou"};
  app.require_subcommand(1);

  SchemeFlags sim_flags;
  double x0 = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string sim_out = "-";
  bool report_bounds = false;
  auto* simulate = app.add_subcommand("simulate", "simulate one observed path, write i,t,x CSV");
  add_model_flags(simulate, sim_flags);
  simulate->add_option("--x0", x0, "initial value");
  simulate->add_option("--oversample", sim_flags.oversample, "fine steps per observation")
      ->check(CLI::Range(1, 1024));
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--stream", stream, "RNG stream");
  simulate->add_option("--out", sim_out, "output CSV path ('-' for stdout)");
  simulate->add_flag("--report-bounds", report_bounds, "print the Berry-Esseen budget to stderr");

  std::string est_in = "-";
  auto* estimate_cmd = app.add_subcommand("estimate", "least-squares estimate from a path CSV");
  estimate_cmd->add_option("--in,input", est_in, "path CSV ('-' for stdin)");

  SchemeFlags th_flags;
  std::string ef2 = "asymptotic";
  std::optional<double> eta;
  std::optional<double> dlt;
  auto* theory = app.add_subcommand("theory", "normalizing constants and bound budget as JSON");
  add_model_flags(theory, th_flags);
  theory->add_option("--ef2", ef2, "asymptotic | quadrature")
      ->check(CLI::IsMember({"asymptotic", "quadrature"}));
  theory->add_option("--eta", eta, "eta in (0,1)");
  theory->add_option("--dlt", dlt, "delta in (0,1)");

  std::string config_path;
  std::optional<unsigned> threads;
  std::string mc_json;
  std::string mc_csv;
  auto* mc = app.add_subcommand("mc", "Monte Carlo study from a JSON config");
  mc->add_option("--config,config", config_path, "run configuration JSON")->required();
  mc->add_option("--threads", threads, "worker threads (default: FOU_THREADS or 1)");
  mc->add_option("--out-json", mc_json, "report JSON path (overrides config)");
  mc->add_option("--out-csv", mc_csv, "summary CSV path (overrides config)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "fou: error: " << one_line(e.what()) << '\n';
    return kUsageError;
  }

  try {
    if (*simulate) {
      return cmd_simulate(sim_flags, x0, seed, stream, sim_out, report_bounds, out, err);
    }
    if (*estimate_cmd) return cmd_estimate(est_in, out);
    if (*theory) return cmd_theory(th_flags, ef2, eta, dlt, out);
    if (*mc) return cmd_mc(config_path, threads, mc_json, mc_csv, out);
  } catch (const ValidationError& e) {
    err << "fou: error: " << one_line(e.what()) << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "fou: runtime error: " << one_line(e.what()) << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace fou::cli
