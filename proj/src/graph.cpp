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

#include "pgroup/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>

#include "pgroup/error.hpp"
#include "pgroup/rng.hpp"

namespace pgroup {

std::string_view to_string(CommutationMode mode) {
  return mode == CommutationMode::FC ? "fc" : "qwc";
}

CommutationMode parse_mode(std::string_view text) {
  if (text == "fc" || text == "FC") return CommutationMode::FC;
  if (text == "qwc" || text == "QWC") return CommutationMode::QWC;
  throw InvalidArgument("unknown commutation mode '" + std::string(text) + "'");
}

bool compatible(const PauliWord& a, const PauliWord& b, CommutationMode mode) {
  return mode == CommutationMode::FC ? commutes_fc(a, b) : commutes_qwc(a, b);
}

CompatGraph::CompatGraph(std::size_t n_vertices, CommutationMode mode)
    : n_(n_vertices), words_((n_vertices + 63) / 64), mode_(mode), bits_(n_ * words_, 0) {}

CompatGraph CompatGraph::from_edges(std::size_t n_vertices,
                                    std::span<const std::pair<std::size_t, std::size_t>> edges,
                                    CommutationMode mode) {
  CompatGraph g(n_vertices, mode);
  for (auto [i, j] : edges) g.add_edge(i, j);
  return g;
}

bool CompatGraph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw IndexError("vertex index out of range");
  return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
}

void CompatGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw IndexError("vertex index out of range");
  if (i == j) throw InvalidArgument("self-loops are not allowed");
  bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
}

std::size_t CompatGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::uint64_t w : row(v)) d += std::popcount(w);
  return d;
}

std::vector<std::size_t> CompatGraph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  const auto r = row(v);
  for (std::size_t k = 0; k < r.size(); ++k) {
    std::uint64_t w = r[k];
    while (w) {
      out.push_back(k * 64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t CompatGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

CompatGraph build_complement_graph(const QubitHamiltonian& h, CommutationMode mode) {
  if (h.empty()) throw EmptyInputError("cannot build a graph from a Hamiltonian with no terms");
  const auto& terms = h.terms();
  CompatGraph g(terms.size(), mode);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!compatible(terms[i].word, terms[j].word, mode)) g.add_edge(i, j);
    }
  }
  return g;
}

bool Coloring::is_complete() const {
  return std::none_of(colors_.begin(), colors_.end(), [](int c) { return c <= 0; });
}

int Coloring::max_color() const {
  int m = 0;
  for (int c : colors_) m = std::max(m, c);
  return m;
}

Coloring Coloring::canonical() const {
  std::vector<int> relabel(static_cast<std::size_t>(max_color()) + 1, 0);
  int next = 0;
  std::vector<int> out(colors_.size(), 0);
  for (std::size_t v = 0; v < colors_.size(); ++v) {
    const int c = colors_[v];
    if (c <= 0) continue;
    if (relabel[c] == 0) relabel[c] = ++next;
    out[v] = relabel[c];
  }
  return Coloring(std::move(out));
}

bool validate_coloring(const CompatGraph& g, const Coloring& c) {
  if (c.size() != g.n_vertices()) {
    throw DimensionError("coloring has " + std::to_string(c.size()) + " entries for " +
                         std::to_string(g.n_vertices()) + " vertices");
  }
  if (!c.is_complete()) throw IncompleteColoringError("coloring has uncolored vertices");
  for (std::size_t v = 0; v < g.n_vertices(); ++v) {
    for (std::size_t u : g.neighbors(v)) {
      if (u > v && c[u] == c[v]) return false;
    }
  }
  return true;
}

std::string_view to_string(GreedyStrategy s) {
  switch (s) {
    case GreedyStrategy::LargestFirst:
      return "largest_first";
    case GreedyStrategy::Dsatur:
      return "dsatur";
    case GreedyStrategy::RandomSequential:
      return "random_sequential";
  }
  return "unknown";
}

namespace {

int smallest_free_color(const CompatGraph& g, const std::vector<int>& colors, std::size_t v,
                        std::vector<char>& scratch) {
  scratch.assign(g.n_vertices() + 2, 0);
  for (std::size_t u : g.neighbors(v)) {
    if (colors[u] > 0) scratch[static_cast<std::size_t>(colors[u])] = 1;
  }
  int c = 1;
  while (scratch[static_cast<std::size_t>(c)]) ++c;
  return c;
}

Coloring color_in_order(const CompatGraph& g, const std::vector<std::size_t>& order) {
  std::vector<int> colors(g.n_vertices(), 0);
  std::vector<char> scratch;
  for (std::size_t v : order) colors[v] = smallest_free_color(g, colors, v, scratch);
  return Coloring(std::move(colors));
}

Coloring dsatur(const CompatGraph& g) {
  const std::size_t n = g.n_vertices();
  std::vector<int> colors(n, 0);
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = g.degree(v);
  // seen[v][c] marks color c among v's colored neighbors
  std::vector<std::vector<char>> seen(n, std::vector<char>(n + 2, 0));
  std::vector<std::size_t> saturation(n, 0);
  std::vector<char> scratch;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (colors[v] != 0) continue;
      if (best == n || saturation[v] > saturation[best] ||
          (saturation[v] == saturation[best] && degree[v] > degree[best])) {
        best = v;
      }
    }
    const int c = smallest_free_color(g, colors, best, scratch);
    colors[best] = c;
    for (std::size_t u : g.neighbors(best)) {
      if (colors[u] == 0 && !seen[u][static_cast<std::size_t>(c)]) {
        seen[u][static_cast<std::size_t>(c)] = 1;
        ++saturation[u];
      }
    }
  }
  return Coloring(std::move(colors));
}

}  // namespace

Coloring greedy_color(const CompatGraph& g, GreedyStrategy strategy, std::uint64_t seed) {
  std::vector<std::size_t> order(g.n_vertices());
  std::iota(order.begin(), order.end(), std::size_t{0});
  switch (strategy) {
    case GreedyStrategy::LargestFirst: {
      std::vector<std::size_t> degree(g.n_vertices());
      for (std::size_t v = 0; v < degree.size(); ++v) degree[v] = g.degree(v);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
      return color_in_order(g, order);
    }
    case GreedyStrategy::Dsatur:
      return dsatur(g);
    case GreedyStrategy::RandomSequential: {
      Rng rng(seed);
      rng.shuffle(std::span<std::size_t>(order));
      return color_in_order(g, order);
    }
  }
  throw InvalidArgument("unknown greedy strategy");
}

Grouping coloring_to_grouping(const CompatGraph& g, const Coloring& c) {
  if (!validate_coloring(g, c)) throw ValidityError("coloring is not proper for the graph");
  Grouping out;
  out.groups.resize(static_cast<std::size_t>(c.max_color()));
  for (std::size_t v = 0; v < c.size(); ++v) {
    out.groups[static_cast<std::size_t>(c[v] - 1)].push_back(v);
  }
  std::erase_if(out.groups, [](const auto& grp) { return grp.empty(); });
  return out;
}

Grouping singleton_grouping(std::size_t n_terms) {
  Grouping out;
  out.groups.reserve(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) out.groups.push_back({i});
  return out;
}

void write_dot(std::ostream& out, const CompatGraph& g, const QubitHamiltonian& h,
               const Coloring& c, std::string_view graph_label) {
  static constexpr const char* kPalette[] = {
      "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
      "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
  constexpr std::size_t kPaletteSize = std::size(kPalette);
  if (h.size() != g.n_vertices() || c.size() != g.n_vertices()) {
    throw DimensionError("graph, Hamiltonian and coloring sizes differ");
  }
  out << "graph grouping {\n";
  out << "  label=\"" << graph_label << "\";\n";
  out << "  labelloc=t;\n";
  out << "  node [style=filled, fontname=\"Helvetica\"];\n";
  for (std::size_t v = 0; v < g.n_vertices(); ++v) {
    const int color = c[v];
    const char* fill = color > 0 ? kPalette[static_cast<std::size_t>(color - 1) % kPaletteSize]
                                 : "#ffffff";
    out << "  v" << v << " [label=\"" << h.term(v).word.to_sparse() << "\", fillcolor=\""
        << fill << "\", group=" << color << "];\n";
  }
  for (std::size_t v = 0; v < g.n_vertices(); ++v) {
    for (std::size_t u : g.neighbors(v)) {
      if (u > v) out << "  v" << v << " -- v" << u << ";\n";
    }
  }
  out << "}\n";
}

}  // namespace pgroup
