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
#include <functional>
#include <span>

#include "pgroup/graph.hpp"
#include "pgroup/hamiltonian.hpp"

namespace pgroup {

/// Chemical accuracy, 1 kcal/mol, in Hartree.
inline constexpr double kChemicalAccuracy = 1.6e-3;
inline constexpr double kDefaultLambda0 = 1e6;

struct MeasurementConfig {
  double epsilon = kChemicalAccuracy;
  double lambda0 = kDefaultLambda0;

  /// Throws InvalidArgument unless both fields are positive and finite.
  void validate() const;
};

/// Variance of one fragment given the Hamiltonian and the fragment's term
/// indices.
using GroupVariance =
    std::function<double(const QubitHamiltonian&, std::span<const std::size_t>)>;

/// Upper bound sum_j c_j^2 on a fragment's variance, assuming uncorrelated
/// terms each with variance at most one.
double variance_bound(const QubitHamiltonian& h, std::span<const std::size_t> group);

/// Shots needed to reach accuracy epsilon:
///   (1/eps^2) * (sum over groups of sqrt(Var(group)))^2
/// with Var given by `variance`, defaulting to variance_bound.
double estimate_measurements(const QubitHamiltonian& h, const Grouping& grouping,
                             double epsilon, const GroupVariance& variance = {});

/// R = (N_P - max_color) + lambda0 / M_est. Throws ValidityError for an
/// improper coloring and IncompleteColoringError for a partial one.
double reward(const QubitHamiltonian& h, const CompatGraph& g, const Coloring& coloring,
              const MeasurementConfig& cfg);

/// The reward formula on precomputed quantities.
double reward_from(std::size_t n_terms, int max_color, double m_est, double lambda0);

}  // namespace pgroup
