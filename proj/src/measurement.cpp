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

#include "pgroup/measurement.hpp"

#include <cmath>
#include <vector>

#include "pgroup/error.hpp"

namespace pgroup {

void MeasurementConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be positive");
  }
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
    throw InvalidArgument("lambda0 must be positive");
  }
}

double variance_bound(const QubitHamiltonian& h, std::span<const std::size_t> group) {
  double sum = 0.0;
  for (std::size_t k : group) {
    const double c = h.term(k).coefficient;
    sum += c * c;
  }
  return sum;
}

double estimate_measurements(const QubitHamiltonian& h, const Grouping& grouping,
                             double epsilon, const GroupVariance& variance) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (grouping.groups.empty()) throw EmptyInputError("grouping has no groups");
  double sqrt_sum = 0.0;
  for (const auto& group : grouping.groups) {
    for (std::size_t k : group) {
      if (k >= h.size()) {
        throw IndexError("group references term " + std::to_string(k) + " of " +
                         std::to_string(h.size()));
      }
    }
    const double var = variance ? variance(h, group) : variance_bound(h, group);
    sqrt_sum += std::sqrt(var);
  }
  return sqrt_sum * sqrt_sum / (epsilon * epsilon);
}

double reward_from(std::size_t n_terms, int max_color, double m_est, double lambda0) {
  return (static_cast<double>(n_terms) - static_cast<double>(max_color)) + lambda0 / m_est;
}

double reward(const QubitHamiltonian& h, const CompatGraph& g, const Coloring& coloring,
              const MeasurementConfig& cfg) {
  cfg.validate();
  const Grouping grouping = coloring_to_grouping(g, coloring);
  const double m_est = estimate_measurements(h, grouping, cfg.epsilon);
  return reward_from(h.size(), coloring.max_color(), m_est, cfg.lambda0);
}

}  // namespace pgroup
