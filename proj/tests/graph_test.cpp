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
#include <sstream>

#include <gtest/gtest.h>

#include "pgroup/error.hpp"
#include "pgroup/graph.hpp"
#include "pgroup/hamiltonian_io.hpp"
#include "test_support.hpp"

namespace pgroup {
namespace {

using Edge = std::pair<std::size_t, std::size_t>;

constexpr GreedyStrategy kStrategies[] = {GreedyStrategy::LargestFirst, GreedyStrategy::Dsatur,
                                          GreedyStrategy::RandomSequential};

CompatGraph triangle() {
  const Edge e[] = {{0, 1}, {1, 2}, {0, 2}};
  return CompatGraph::from_edges(3, e);
}

CompatGraph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return CompatGraph::from_edges(n, e);
}

TEST(ComplementGraph, SingleTerm) {
  const CompatGraph g = build_complement_graph(parse_hamiltonian("qubits: 1\n1 X0\n"),
                                               CommutationMode::FC);
  EXPECT_EQ(g.n_vertices(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ComplementGraph, FcVersusQwc) {
  const QubitHamiltonian h = parse_hamiltonian("qubits: 2\n1 X0 X1\n1 Y0 Y1\n1 Z0\n");
  const CompatGraph fc = build_complement_graph(h, CommutationMode::FC);
  EXPECT_EQ(fc.edge_count(), 2u);
  EXPECT_TRUE(fc.has_edge(0, 2));
  EXPECT_TRUE(fc.has_edge(1, 2));
  EXPECT_FALSE(fc.has_edge(0, 1));
  const CompatGraph qwc = build_complement_graph(h, CommutationMode::QWC);
  EXPECT_EQ(qwc.edge_count(), 3u);
  EXPECT_TRUE(qwc.has_edge(0, 1));
}

TEST(ComplementGraph, EmptyHamiltonianRejected) {
  EXPECT_THROW(build_complement_graph(QubitHamiltonian(2), CommutationMode::FC), EmptyInputError);
}

TEST(ComplementGraph, EdgesMatchPairwiseChecks) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const QubitHamiltonian h = testing::random_hamiltonian(5, 40, rng);
    for (CommutationMode mode : {CommutationMode::FC, CommutationMode::QWC}) {
      const CompatGraph g = build_complement_graph(h, mode);
      for (std::size_t i = 0; i < h.size(); ++i) {
        EXPECT_FALSE(g.has_edge(i, i));
        for (std::size_t j = 0; j < h.size(); ++j) {
          if (i == j) continue;
          const bool compat = mode == CommutationMode::FC
                                  ? commutes_fc(h.term(i).word, h.term(j).word)
                                  : commutes_qwc(h.term(i).word, h.term(j).word);
          ASSERT_EQ(g.has_edge(i, j), !compat);
        }
      }
    }
  }
}

TEST(CompatGraph, SelfLoopsRejected) {
  CompatGraph g(3, CommutationMode::FC);
  EXPECT_THROW(g.add_edge(1, 1), InvalidArgument);
  EXPECT_THROW(g.add_edge(0, 3), IndexError);
}

TEST(GreedyColor, TriangleAndEdgeless) {
  for (GreedyStrategy s : kStrategies) {
    EXPECT_EQ(greedy_color(triangle(), s, 9).max_color(), 3);
    EXPECT_EQ(greedy_color(CompatGraph(6, CommutationMode::FC), s, 9).max_color(), 1);
  }
}

TEST(GreedyColor, LargestFirstOrder) {
  // Star centre 3 is visited first and takes color 1.
  const Edge e[] = {{3, 0}, {3, 1}, {3, 2}, {0, 1}};
  const Coloring c = greedy_color(CompatGraph::from_edges(4, e), GreedyStrategy::LargestFirst);
  EXPECT_EQ(c.colors(), (std::vector<int>{2, 3, 2, 1}));
}

TEST(GreedyColor, DsaturBeatsLargestFirstOnCrown) {
  // Crown graph on 3+3 vertices in interleaved order: largest first uses 3
  // colors, DSATUR finds the bipartition.
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) e.emplace_back(2 * i, 2 * j + 1);
    }
  }
  const CompatGraph g = CompatGraph::from_edges(6, e);
  EXPECT_EQ(greedy_color(g, GreedyStrategy::LargestFirst).max_color(), 3);
  EXPECT_EQ(greedy_color(g, GreedyStrategy::Dsatur).max_color(), 2);
}

TEST(GreedyColor, DeterministicAndGapFree) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const CompatGraph g = testing::random_graph(1 + rng.below(30), rng.uniform01(), rng);
    for (GreedyStrategy s : kStrategies) {
      const Coloring a = greedy_color(g, s, 42);
      EXPECT_EQ(a, greedy_color(g, s, 42));
      EXPECT_TRUE(validate_coloring(g, a));
      EXPECT_TRUE(testing::is_proper(g, a.colors()));
      std::vector<int> used = a.colors();
      std::sort(used.begin(), used.end());
      used.erase(std::unique(used.begin(), used.end()), used.end());
      EXPECT_EQ(static_cast<int>(used.size()), a.max_color());
    }
  }
}

TEST(ValidateColoring, Examples) {
  EXPECT_TRUE(validate_coloring(CompatGraph(3, CommutationMode::FC), Coloring({1, 1, 1})));
  const Edge e[] = {{0, 1}};
  const CompatGraph g = CompatGraph::from_edges(2, e);
  EXPECT_FALSE(validate_coloring(g, Coloring({1, 1})));
  EXPECT_THROW(validate_coloring(g, Coloring({1, 0})), IncompleteColoringError);
  EXPECT_THROW(validate_coloring(g, Coloring({1, 2, 3})), DimensionError);
}

TEST(ExactMinColors, SmallGraphs) {
  EXPECT_EQ(exact_min_colors(triangle()).max_color(), 3);
  EXPECT_EQ(exact_min_colors(cycle(5)).max_color(), 3);
  EXPECT_EQ(exact_min_colors(cycle(6)).max_color(), 2);
  EXPECT_EQ(exact_min_colors(CompatGraph(4, CommutationMode::FC)).max_color(), 1);
  EXPECT_THROW(exact_min_colors(CompatGraph(21, CommutationMode::FC)), SizeError);
  EXPECT_EQ(exact_min_colors(CompatGraph(21, CommutationMode::FC), 21).max_color(), 1);
}

TEST(ExactMinColors, MatchesBruteForceAndDominatesGreedy) {
  Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const CompatGraph g = testing::random_graph(1 + rng.below(10), rng.uniform01(), rng);
    const Coloring exact = exact_min_colors(g);
    ASSERT_TRUE(testing::is_proper(g, exact.colors()));
    ASSERT_EQ(exact.max_color(), testing::brute_force_chromatic(g));
    for (GreedyStrategy s : kStrategies) {
      EXPECT_LE(exact.max_color(), greedy_color(g, s, static_cast<std::uint64_t>(trial)).max_color());
    }
  }
}

TEST(CompleteColoring, RespectsPartialAssignmentAndBudget) {
  // Path 0-1-2 with 0 and 2 pre-colored differently needs a third color at 1
  // unless the cap allows it.
  const Edge e[] = {{0, 1}, {1, 2}};
  const CompatGraph g = CompatGraph::from_edges(3, e);
  std::vector<int> colors{1, 0, 2};
  EXPECT_EQ(complete_coloring(g, colors, 2), SearchOutcome::Infeasible);
  EXPECT_EQ(colors, (std::vector<int>{1, 0, 2}));
  EXPECT_EQ(complete_coloring(g, colors, 3), SearchOutcome::Found);
  EXPECT_EQ(colors, (std::vector<int>{1, 3, 2}));

  // A dense 60-vertex graph: caps below the clique bound are refuted at once,
  // the first cap that is not refuted cannot be settled in 50 nodes.
  Rng rng(2);
  const CompatGraph big = testing::random_graph(60, 0.5, rng);
  SearchOutcome first_open = SearchOutcome::Infeasible;
  for (int cap = 1; cap <= 60 && first_open == SearchOutcome::Infeasible; ++cap) {
    std::vector<int> none(60, 0);
    first_open = complete_coloring(big, none, cap, 50);
  }
  EXPECT_EQ(first_open, SearchOutcome::BudgetExhausted);
}

TEST(Coloring, CanonicalRelabelsByFirstAppearance) {
  const Coloring c({3, 3, 1, 2, 1});
  EXPECT_EQ(c.canonical().colors(), (std::vector<int>{1, 1, 2, 3, 2}));
  EXPECT_EQ(c.max_color(), 3);
  EXPECT_TRUE(c.is_complete());
  EXPECT_FALSE(Coloring({1, 0}).is_complete());
}

TEST(Grouping, DualityWithPairwiseCompatibility) {
  Rng rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const QubitHamiltonian h = testing::random_hamiltonian(4, 12, rng);
    const CommutationMode mode = trial % 2 ? CommutationMode::FC : CommutationMode::QWC;
    const CompatGraph g = build_complement_graph(h, mode);
    // Random complete colorings, proper or not.
    std::vector<int> colors(h.size());
    for (int& c : colors) c = 1 + static_cast<int>(rng.below(5));
    const Coloring c(colors);
    bool cliques = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        if (colors[i] == colors[j]) cliques = cliques && compatible(h.term(i).word, h.term(j).word, mode);
      }
    }
    EXPECT_EQ(validate_coloring(g, c), cliques);
    if (cliques) {
      const Grouping grouping = coloring_to_grouping(g, c);
      std::size_t covered = 0;
      for (const auto& group : grouping.groups) {
        covered += group.size();
        for (std::size_t a : group) {
          for (std::size_t b : group) EXPECT_TRUE(a == b || compatible(h.term(a).word, h.term(b).word, mode));
        }
      }
      EXPECT_EQ(covered, h.size());
    } else {
      EXPECT_THROW(coloring_to_grouping(g, c), ValidityError);
    }
  }
}

TEST(Grouping, SingletonsAndSingleGroup) {
  const Grouping s = singleton_grouping(4);
  EXPECT_EQ(s.size(), 4u);
  const Grouping one = coloring_to_grouping(CompatGraph(3, CommutationMode::FC), Coloring({1, 1, 1}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.groups[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Grouping, PermutedColorsGiveSameGroups) {
  const Edge e[] = {{0, 1}, {1, 2}};
  const CompatGraph g = CompatGraph::from_edges(3, e);
  auto sorted = [](Grouping gr) {
    std::sort(gr.groups.begin(), gr.groups.end());
    return gr.groups;
  };
  EXPECT_EQ(sorted(coloring_to_grouping(g, Coloring({1, 2, 1}))),
            sorted(coloring_to_grouping(g, Coloring({2, 1, 2}))));
}

TEST(H2Fixture, LargestFirstFcUsesTwoColors) {
  const QubitHamiltonian h = load_hamiltonian_file(testing::data_path(testing::kH2Fixture));
  const CompatGraph g = build_complement_graph(h, CommutationMode::FC);
  const Coloring c = greedy_color(g, GreedyStrategy::LargestFirst);
  EXPECT_EQ(c.max_color(), 2);
  const Grouping grouping = coloring_to_grouping(g, c);
  ASSERT_EQ(grouping.size(), 2u);
  EXPECT_EQ(grouping.groups[0].size() + grouping.groups[1].size(), 14u);
}

TEST(WriteDot, ContainsNodesAndEdges) {
  const QubitHamiltonian h = parse_hamiltonian("qubits: 1\n1 X0\n0.5 Z0\n");
  const CompatGraph g = build_complement_graph(h, CommutationMode::FC);
  std::ostringstream out;
  write_dot(out, g, h, Coloring({1, 2}), "label");
  const std::string dot = out.str();
  EXPECT_NE(dot.find("v0 [label=\"X0\""), std::string::npos);
  EXPECT_NE(dot.find("v1 [label=\"Z0\""), std::string::npos);
  EXPECT_NE(dot.find("v0 -- v1"), std::string::npos);
}

}  // namespace
}  // namespace pgroup
