// Copyright 2026 The pgroup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pgroup/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pgroup {

bool is_greedy_method(const std::string& method) {
  return method == "greedy-lf" || method == "greedy-dsat" || method == "greedy-rs";
}

std::optional<double> reduction_factor(std::span<const MethodRecord> methods) {
  std::optional<double> gflownet;
  std::optional<double> best_greedy;
  for (const MethodRecord& r : methods) {
    if (r.method == "gflownet") gflownet = r.m_est;
    if (is_greedy_method(r.method)) {
      best_greedy = best_greedy ? std::min(*best_greedy, r.m_est) : r.m_est;
    }
  }
  if (!gflownet || !best_greedy) return std::nullopt;
  return *gflownet / *best_greedy;
}

nlohmann::ordered_json to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "pgroup-run-report";
  j["schema_version"] = kReportSchemaVersion;
  j["system"] = report.system;
  j["n_terms"] = report.n_terms;
  j["n_qubits"] = report.n_qubits;
  j["mode"] = std::string(to_string(report.mode));
  j["epsilon"] = report.epsilon;
  j["lambda0"] = report.lambda0;
  j["seed"] = report.seed;
  j["config"] = report.config;
  auto methods = nlohmann::ordered_json::array();
  for (const MethodRecord& r : report.methods) {
    nlohmann::ordered_json m;
    m["method"] = r.method;
    m["color_count"] = r.color_count;
    m["m_est"] = r.m_est;
    m["m_est_millions"] = r.m_est / 1e6;
    m["reward"] = r.reward;
    m["coloring"] = r.coloring.colors();
    if (r.wall_time_seconds) m["wall_time_seconds"] = *r.wall_time_seconds;
    if (!r.details.is_null()) m["details"] = r.details;
    methods.push_back(std::move(m));
  }
  j["methods"] = std::move(methods);
  if (report.reduction_factor) j["reduction_factor"] = *report.reduction_factor;
  if (report.generated_at) j["generated_at"] = *report.generated_at;
  return j;
}

std::string render_table(const RunReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "System: %s [N_P = %zu]   mode: %s   epsilon: %g Ha\n",
                report.system.c_str(), report.n_terms,
                report.mode == CommutationMode::FC ? "FC" : "QWC", report.epsilon);
  out << line;
  std::snprintf(line, sizeof(line), "%-14s %22s %12s\n", "method", "M_est/1e6 (colors)",
                "reduction");
  out << line;
  out << std::string(50, '-') << '\n';
  for (const MethodRecord& r : report.methods) {
    char cell[64];
    std::snprintf(cell, sizeof(cell), "%.3f (%d)", r.m_est / 1e6, r.color_count);
    std::string reduction;
    if (r.method == "gflownet" && report.reduction_factor) {
      char rf[32];
      std::snprintf(rf, sizeof(rf), "%.3f", *report.reduction_factor);
      reduction = rf;
    }
    std::snprintf(line, sizeof(line), "%-14s %22s %12s\n", r.method.c_str(), cell,
                  reduction.c_str());
    out << line;
  }
  return out.str();
}

}  // namespace pgroup
