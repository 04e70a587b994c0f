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

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "fou/lse.hpp"
#include "fou/montecarlo.hpp"

namespace fou {

/// Column order of the per-scheme summary CSV.
inline constexpr const char* kReportCsvHeader =
    "n,delta,T,mean,sd,bias,ks,var_ratio,degenerate,budget_total,seconds";

nlohmann::json to_json(const EstimateResult& est);
nlohmann::json to_json(const BoundBudget& budget);

/// Keys: alpha_n, alpha_limit_rate, a_theta_h, ef2, ef2_source, lambda_n,
/// sigma_h2, budget.
nlohmann::json theory_json(const TheoryConstants& consts, const BoundBudget& budget);

nlohmann::json to_json(const McReport& report);
void write_report_csv(std::ostream& os, const McReport& report);

/// Report JSON with timing fields removed, for byte comparison.
nlohmann::json canonical_report(nlohmann::json report);

/// JSON run configuration for the `mc` subcommand.
struct RunConfig {
  McConfig mc;
  std::optional<unsigned> threads;
  std::optional<std::string> json_path;
  std::optional<std::string> csv_path;
};

/// Validates the document against the schema (unknown keys rejected) and
/// throws ConfigError with a one-line reason.
RunConfig parse_run_config(const nlohmann::json& doc);

}  // namespace fou
