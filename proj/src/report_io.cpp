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

#include "fou/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <set>

#include "fou/errors.hpp"

namespace fou {

using nlohmann::json;

json to_json(const EstimateResult& est) {
  return {{"theta_hat", est.theta_hat},
          {"numerator", est.numerator},
          {"denominator", est.denominator},
          {"n", est.n},
          {"delta", est.delta}};
}

json to_json(const BoundBudget& budget) {
  json terms = json::object();
  for (std::size_t i = 0; i < budget.terms.size(); ++i) terms[BoundBudget::kNames[i]] = budget.terms[i];
  return {{"eta", budget.eta},
          {"dlt", budget.dlt},
          {"terms", terms},
          {"total", budget.total},
          {"caveat", BoundBudget::kCaveat}};
}

json theory_json(const TheoryConstants& c, const BoundBudget& budget) {
  return {{"alpha_n", c.alpha_n},
          {"alpha_limit_rate", c.alpha_limit_rate},
          {"a_theta_h", c.a_theta_h},
          {"ef2", c.ef2},
          {"ef2_source", to_string(c.ef2_source)},
          {"lambda_n", c.lambda_n},
          {"sigma_h2", c.sigma_h2},
          {"budget", to_json(budget)}};
}

json to_json(const McReport& report) {
  const McConfig& cfg = report.config;
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"n", r.n},
                       {"delta", r.delta},
                       {"T", r.horizon},
                       {"oversample", r.oversample},
                       {"mean_theta_hat", r.mean_theta_hat},
                       {"sd_theta_hat", r.sd_theta_hat},
                       {"bias", r.bias},
                       {"ks_distance", r.ks_distance},
                       {"var_ratio", r.var_ratio},
                       {"degenerate_count", r.degenerate_count},
                       {"fallback_count", r.fallback_count},
                       {"lambda_n", r.lambda_n},
                       {"sigma_h2", r.sigma_h2},
                       {"budget", to_json(r.budget)},
                       {"seconds", r.seconds}});
  }
  return {{"model", {{"theta", cfg.params.theta}, {"hurst", cfg.params.hurst}, {"x0", cfg.params.x0}}},
          {"replications", cfg.replications},
          {"seed", cfg.base_seed},
          {"ef2", to_string(cfg.ef2_mode)},
          {"gamma", cfg.gamma ? json(*cfg.gamma) : json(nullptr)},
          {"records", records}};
}

void write_report_csv(std::ostream& os, const McReport& report) {
  os << kReportCsvHeader << '\n';
  char buf[512];
  for (const auto& r : report.records) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%lld,%.17g,%.6f\n",
                  static_cast<long long>(r.n), r.delta, r.horizon, r.mean_theta_hat,
                  r.sd_theta_hat, r.bias, r.ks_distance, r.var_ratio,
                  static_cast<long long>(r.degenerate_count), r.budget.total, r.seconds);
    os << buf;
  }
}

json canonical_report(json report) {
  if (report.contains("records")) {
    for (auto& r : report["records"]) r.erase("seconds");
  }
  return report;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!keys.count(item.key())) fail("unknown key '" + item.key() + "' in " + where);
  }
}

const json& require_object(const json& parent, const char* key) {
  if (!parent.contains(key)) fail(std::string("missing required key '") + key + "'");
  const json& v = parent.at(key);
  if (!v.is_object()) fail(std::string("'") + key + "' must be an object");
  return v;
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail("missing required key '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number()) fail("'" + std::string(key) + "' in " + where + " must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) fail(what + " must be an integer");
  return v.get<std::int64_t>();
}

std::string text(const json& v, const std::string& what) {
  if (!v.is_string()) fail(what + " must be a string");
  return v.get<std::string>();
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) fail("top level must be an object");
  reject_unknown(doc, "config", {"model", "schedule", "oversample", "replications", "seed", "ef2",
                                 "eta", "dlt", "threads", "output"});
  RunConfig rc;
  McConfig& mc = rc.mc;

  const json& model = require_object(doc, "model");
  reject_unknown(model, "model", {"theta", "hurst", "x0"});
  mc.params.theta = number(model, "theta", "model");
  mc.params.hurst = number(model, "hurst", "model");
  mc.params.x0 = model.contains("x0") ? number(model, "x0", "model") : 0.0;

  int oversample = 8;
  if (doc.contains("oversample")) {
    const auto v = integer(doc["oversample"], "'oversample'");
    if (v < 1 || v > 1024) fail("'oversample' must lie in [1, 1024]");
    oversample = static_cast<int>(v);
  }

  const json& schedule = require_object(doc, "schedule");
  reject_unknown(schedule, "schedule", {"n", "gamma", "delta"});
  if (!schedule.contains("n") || !schedule["n"].is_array()) fail("'schedule.n' must be an array");
  if (schedule["n"].empty()) fail("'schedule.n' is empty");
  const bool has_gamma = schedule.contains("gamma");
  const bool has_delta = schedule.contains("delta");
  if (has_gamma == has_delta) fail("'schedule' needs exactly one of 'gamma' or 'delta'");
  if (has_gamma) mc.gamma = number(schedule, "gamma", "schedule");
  for (const auto& item : schedule["n"]) {
    const auto n = integer(item, "'schedule.n' entries");
    if (n < 2) fail("'schedule.n' entries must be at least 2");
    if (has_gamma) {
      mc.schedule.push_back(SamplingScheme::from_gamma(n, *mc.gamma, oversample));
    } else {
      mc.schedule.push_back({n, number(schedule, "delta", "schedule"), oversample});
    }
  }

  if (doc.contains("replications")) mc.replications = integer(doc["replications"], "'replications'");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("'seed' must be a nonnegative integer");
    mc.base_seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("ef2")) {
    try {
      mc.ef2_mode = parse_ef2_mode(text(doc["ef2"], "'ef2'"));
    } catch (const DomainError& e) {
      fail(e.what());
    }
  }
  if (doc.contains("eta")) mc.eta = number(doc, "eta", "config");
  if (doc.contains("dlt")) mc.dlt = number(doc, "dlt", "config");
  if (doc.contains("threads")) {
    const auto t = integer(doc["threads"], "'threads'");
    if (t < 1) fail("'threads' must be positive");
    rc.threads = static_cast<unsigned>(t);
  }
  if (doc.contains("output")) {
    const json& out = require_object(doc, "output");
    reject_unknown(out, "output", {"json", "csv"});
    if (out.contains("json")) rc.json_path = text(out["json"], "'output.json'");
    if (out.contains("csv")) rc.csv_path = text(out["csv"], "'output.csv'");
  }

  try {
    mc.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    fail(e.what());
  }
  return rc;
}

}  // namespace fou
