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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "pgroup/error.hpp"
#include "pgroup/hamiltonian_io.hpp"
#include "pgroup/measurement.hpp"
#include "test_support.hpp"

namespace pgroup {
namespace {

QubitHamiltonian three_terms() {
  return parse_hamiltonian("qubits: 3\n0.5 Z0\n0.3 Z1\n0.2 Z2\n");
}

TEST(EstimateMeasurements, SingleTerm) {
  const QubitHamiltonian h = parse_hamiltonian("qubits: 1\n0.7 X0\n");
  EXPECT_NEAR(estimate_measurements(h, singleton_grouping(1), 0.01), 0.49 / 1e-4, 1e-8);
}

TEST(EstimateMeasurements, HandEvaluatedExample) {
  // (sqrt(0.25 + 0.09) + 0.2)^2 / (1.6e-3)^2
  const Grouping g{{{0, 1}, {2}}};
  const double expected = std::pow(std::sqrt(0.34) + 0.2, 2) / (1.6e-3 * 1.6e-3);
  EXPECT_NEAR(expected, 2.3955e5, 0.0001e5);
  EXPECT_NEAR(estimate_measurements(three_terms(), g, kChemicalAccuracy), expected, 1e-9 * expected);
}

TEST(EstimateMeasurements, SingletonsGiveOneNormSquared) {
  Rng rng(4);
  const QubitHamiltonian h = testing::random_hamiltonian(6, 25, rng);
  const double expected = std::pow(one_norm(h), 2) / (0.01 * 0.01);
  EXPECT_NEAR(estimate_measurements(h, singleton_grouping(h.size()), 0.01), expected,
              1e-12 * expected);
}

TEST(EstimateMeasurements, Errors) {
  EXPECT_THROW(estimate_measurements(three_terms(), Grouping{}, 1e-3), EmptyInputError);
  EXPECT_THROW(estimate_measurements(three_terms(), Grouping{{{0, 5}}}, 1e-3), IndexError);
  EXPECT_THROW(estimate_measurements(three_terms(), singleton_grouping(3), 0.0), InvalidArgument);
}

TEST(EstimateMeasurements, ScaleLaw) {
  const Grouping g{{{0, 1}, {2}}};
  const double a = estimate_measurements(three_terms(), g, 2e-3);
  const double b = estimate_measurements(three_terms(), g, 1e-3);
  EXPECT_NEAR(b / a, 4.0, 1e-12);
}

TEST(EstimateMeasurements, PermutationInvariant) {
  const QubitHamiltonian h = three_terms();
  const double a = estimate_measurements(h, Grouping{{{0, 1}, {2}}}, 1e-3);
  const double b = estimate_measurements(h, Grouping{{{2}, {1, 0}}}, 1e-3);
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(EstimateMeasurements, CustomVarianceHook) {
  const GroupVariance unit = [](const QubitHamiltonian&, std::span<const std::size_t>) {
    return 1.0;
  };
  EXPECT_NEAR(estimate_measurements(three_terms(), Grouping{{{0, 1}, {2}}}, 1.0, unit), 4.0, 1e-12);
}

TEST(EstimateMeasurements, MergingNeverIncreases) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const QubitHamiltonian h = testing::random_hamiltonian(4, 2 + rng.below(15), rng);
    const CompatGraph g = build_complement_graph(h, CommutationMode::FC);
    const Coloring c = greedy_color(g, GreedyStrategy::RandomSequential, rng.next());
    Grouping grouping = coloring_to_grouping(g, c);
    const double before = estimate_measurements(h, grouping, kChemicalAccuracy);
    for (std::size_t a = 0; a < grouping.size(); ++a) {
      for (std::size_t b = a + 1; b < grouping.size(); ++b) {
        bool ok = true;
        for (std::size_t i : grouping.groups[a]) {
          for (std::size_t j : grouping.groups[b]) ok = ok && !g.has_edge(i, j);
        }
        if (!ok) continue;
        Grouping merged = grouping;
        merged.groups[a].insert(merged.groups[a].end(), merged.groups[b].begin(),
                                merged.groups[b].end());
        merged.groups.erase(merged.groups.begin() + static_cast<std::ptrdiff_t>(b));
        EXPECT_LE(estimate_measurements(h, merged, kChemicalAccuracy), before * (1 + 1e-12));
      }
    }
  }
}

TEST(Reward, HandEvaluated) {
  const QubitHamiltonian h = parse_hamiltonian("qubits: 2\n1 Z0\n1 Z1\n");
  const CompatGraph g = build_complement_graph(h, CommutationMode::FC);
  EXPECT_NEAR(reward(h, g, Coloring({1, 1}), {1.0, 1e6}), 1.0 + 5e5, 1e-6);
}

TEST(Reward, SingletonsLeaveOnlyTheMeasurementTerm) {
  const QubitHamiltonian h = three_terms();
  const CompatGraph g = build_complement_graph(h, CommutationMode::FC);
  const double expected = 1e6 * kChemicalAccuracy * kChemicalAccuracy / std::pow(one_norm(h), 2);
  EXPECT_NEAR(reward(h, g, Coloring({1, 2, 3}), {}), expected, 1e-12);
}

TEST(Reward, ImproperColoringRejected) {
  const QubitHamiltonian h = parse_hamiltonian("qubits: 1\n1 X0\n1 Z0\n");
  const CompatGraph g = build_complement_graph(h, CommutationMode::FC);
  EXPECT_THROW(reward(h, g, Coloring({1, 1}), {}), ValidityError);
}

TEST(Reward, MonotoneInColorsAndMest) {
  EXPECT_GT(reward_from(10, 3, 1e5, 1e6), reward_from(10, 4, 1e5, 1e6));
  EXPECT_GT(reward_from(10, 3, 1e5, 1e6), reward_from(10, 3, 2e5, 1e6));
  EXPECT_GT(reward_from(10, 10, 1e9, 1e6), 0.0);
}

TEST(Reward, H2LowerMestGroupingWins) {
  const QubitHamiltonian h = load_hamiltonian_file(testing::data_path(testing::kH2Fixture));
  const CompatGraph g = build_complement_graph(h, CommutationMode::FC);
  const Coloring best = exact_min_colors(g);
  double best_reward = 0.0;
  double worst_reward = INFINITY;
  testing::for_each_partition(g, 2, [&](const std::vector<int>& c) {
    const double r = reward(h, g, Coloring(c), {});
    best_reward = std::max(best_reward, r);
    worst_reward = std::min(worst_reward, r);
  });
  EXPECT_EQ(best.max_color(), 2);
  EXPECT_GT(best_reward, worst_reward);
}

TEST(MeasurementConfig, Validates) {
  EXPECT_THROW((MeasurementConfig{-1.0, 1e6}.validate()), InvalidArgument);
  EXPECT_THROW((MeasurementConfig{1e-3, 0.0}.validate()), InvalidArgument);
  EXPECT_NO_THROW(MeasurementConfig{}.validate());
}

TEST(EstimateMeasurements, MatchesOracleOnRandomColorings) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const QubitHamiltonian h = testing::random_hamiltonian(5, 1 + rng.below(20), rng);
    const CompatGraph g = build_complement_graph(h, CommutationMode::QWC);
    const Coloring c = greedy_color(g, GreedyStrategy::RandomSequential, rng.next());
    const double expected = testing::m_est_oracle(h, c.colors(), 2e-3);
    EXPECT_NEAR(estimate_measurements(h, coloring_to_grouping(g, c), 2e-3), expected,
                1e-12 * expected);
  }
}

}  // namespace
}  // namespace pgroup
