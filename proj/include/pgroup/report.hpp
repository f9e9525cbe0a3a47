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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgroup/graph.hpp"

namespace pgroup {

inline constexpr int kReportSchemaVersion = 1;

struct MethodRecord {
  std::string method;
  int color_count = 0;
  double m_est = 0.0;
  double reward = 0.0;
  Coloring coloring;
  std::optional<double> wall_time_seconds;
  nlohmann::ordered_json details;  // method-specific extras, may be null
};

struct RunReport {
  std::string system;
  std::size_t n_terms = 0;
  std::size_t n_qubits = 0;
  CommutationMode mode = CommutationMode::FC;
  double epsilon = 0.0;
  double lambda0 = 0.0;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config;
  std::vector<MethodRecord> methods;
  /// GFlowNet M_est over the best greedy M_est; set only when both ran.
  std::optional<double> reduction_factor;
  std::optional<std::string> generated_at;
};

bool is_greedy_method(const std::string& method);

/// GFlowNet M_est divided by the lowest greedy M_est, if both are present.
std::optional<double> reduction_factor(std::span<const MethodRecord> methods);

nlohmann::ordered_json to_json(const RunReport& report);

/// Plain-text table: one row per method with M_est in millions, the color
/// count in parentheses, and the reduction factor on the GFlowNet row.
std::string render_table(const RunReport& report);

}  // namespace pgroup
