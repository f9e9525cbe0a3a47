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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgroup/hamiltonian.hpp"

namespace pgroup {

enum class CommutationMode { FC, QWC };

std::string_view to_string(CommutationMode mode);
CommutationMode parse_mode(std::string_view text);

/// Whether two words may share a measurement group under `mode`.
bool compatible(const PauliWord& a, const PauliWord& b, CommutationMode mode);

/**
 * Complement of the commutativity graph: vertex i is term i of the source
 * Hamiltonian and an edge joins two terms that are NOT compatible. Proper
 * colorings of this graph are exactly the clique covers of compatibility.
 *
 * Adjacency is a dense bit matrix, one row of 64-bit words per vertex.
 */
class CompatGraph {
 public:
  CompatGraph() = default;
  CompatGraph(std::size_t n_vertices, CommutationMode mode);

  static CompatGraph from_edges(std::size_t n_vertices,
                                std::span<const std::pair<std::size_t, std::size_t>> edges,
                                CommutationMode mode = CommutationMode::FC);

  std::size_t n_vertices() const noexcept { return n_; }
  CommutationMode mode() const noexcept { return mode_; }

  bool has_edge(std::size_t i, std::size_t j) const;
  void add_edge(std::size_t i, std::size_t j);

  std::size_t degree(std::size_t v) const;
  std::vector<std::size_t> neighbors(std::size_t v) const;
  std::size_t edge_count() const;

  std::span<const std::uint64_t> row(std::size_t v) const {
    return {bits_.data() + v * words_, words_};
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  CommutationMode mode_ = CommutationMode::FC;
  std::vector<std::uint64_t> bits_;
};

CompatGraph build_complement_graph(const QubitHamiltonian& h, CommutationMode mode);

/// Vertex -> color map; 0 means uncolored, colors are 1-based.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::size_t n_vertices) : colors_(n_vertices, 0) {}
  explicit Coloring(std::vector<int> colors) : colors_(std::move(colors)) {}

  std::size_t size() const noexcept { return colors_.size(); }
  int operator[](std::size_t v) const { return colors_[v]; }
  int& operator[](std::size_t v) { return colors_[v]; }
  const std::vector<int>& colors() const noexcept { return colors_; }

  bool is_complete() const;
  int max_color() const;
  /// Relabels colors in order of first appearance over vertex index, so
  /// colorings inducing the same partition compare equal.
  Coloring canonical() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<int> colors_;
};

/// True iff no edge joins equal colors. Throws IncompleteColoringError when
/// a vertex is uncolored and DimensionError on a size mismatch.
bool validate_coloring(const CompatGraph& g, const Coloring& c);

enum class GreedyStrategy { LargestFirst, Dsatur, RandomSequential };

std::string_view to_string(GreedyStrategy s);

/**
 * Sequential greedy coloring; each vertex takes the smallest color unused by
 * its colored neighbors.
 *
 * LargestFirst visits vertices by descending degree, ties by index. Dsatur
 * repeatedly picks the uncolored vertex with most distinct neighbor colors,
 * ties by degree then index. RandomSequential visits a permutation drawn
 * from Rng(seed). The seed is ignored by the deterministic strategies.
 */
Coloring greedy_color(const CompatGraph& g, GreedyStrategy strategy, std::uint64_t seed = 0);

inline constexpr std::size_t kDefaultExactVertexLimit = 20;

/// Proper coloring with the minimum number of colors (DSATUR branch and
/// bound). Throws SizeError above `vertex_limit` vertices.
Coloring exact_min_colors(const CompatGraph& g,
                          std::size_t vertex_limit = kDefaultExactVertexLimit);

enum class SearchOutcome { Found, Infeasible, BudgetExhausted };

/**
 * Extends the partial coloring `colors` (0 = uncolored) to a proper coloring
 * using at most `cap` colors. On Found, `colors` holds the completion;
 * otherwise it is left unchanged. `node_budget` bounds the number of search
 * nodes; 0 means unbounded.
 */
SearchOutcome complete_coloring(const CompatGraph& g, std::vector<int>& colors, int cap,
                                std::size_t node_budget = 0);

struct Grouping {
  std::vector<std::vector<std::size_t>> groups;

  std::size_t size() const noexcept { return groups.size(); }
};

/// Group k holds the vertices of color k + 1. Throws ValidityError when the
/// coloring is not proper for `g`.
Grouping coloring_to_grouping(const CompatGraph& g, const Coloring& c);

/// Each term in its own group.
Grouping singleton_grouping(std::size_t n_terms);

/// Graphviz export of the colored graph; vertex labels are the sparse Pauli
/// text of each term and fill colors are indexed by color.
void write_dot(std::ostream& out, const CompatGraph& g, const QubitHamiltonian& h,
               const Coloring& c, std::string_view graph_label);

}  // namespace pgroup
