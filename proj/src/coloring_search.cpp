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

// DSATUR branch and bound shared by exact_min_colors and complete_coloring.

#include <algorithm>
#include <limits>

#include "pgroup/error.hpp"
#include "pgroup/graph.hpp"

namespace pgroup {

namespace {

class DsaturSearch {
 public:
  DsaturSearch(const CompatGraph& g, int cap, std::size_t budget)
      : g_(g),
        n_(g.n_vertices()),
        cap_(cap),
        budget_(budget),
        colors_(n_, 0),
        forbid_(n_ * static_cast<std::size_t>(cap + 1), 0),
        saturation_(n_, 0),
        degree_(n_),
        adjacency_(n_) {
    for (std::size_t v = 0; v < n_; ++v) {
      degree_[v] = g.degree(v);
      adjacency_[v] = g.neighbors(v);
    }
  }

  // Returns false if the fixed prefix is itself improper or exceeds the cap.
  bool seed(const std::vector<int>& partial) {
    for (std::size_t v = 0; v < n_; ++v) {
      const int c = partial[v];
      if (c == 0) continue;
      if (c < 0 || c > cap_) return false;
      if (forbidden(v, c)) return false;
      assign(v, c);
    }
    return true;
  }

  SearchOutcome run() {
    const SearchOutcome out = descend();
    return out;
  }

  const std::vector<int>& colors() const { return colors_; }

 private:
  bool forbidden(std::size_t v, int c) const {
    return forbid_[v * static_cast<std::size_t>(cap_ + 1) + static_cast<std::size_t>(c)] > 0;
  }

  void assign(std::size_t v, int c) {
    colors_[v] = c;
    ++colored_;
    used_max_stack_.push_back(used_max_);
    used_max_ = std::max(used_max_, c);
    for (std::size_t u : adjacency_[v]) {
      auto& slot = forbid_[u * static_cast<std::size_t>(cap_ + 1) + static_cast<std::size_t>(c)];
      if (slot++ == 0) ++saturation_[u];
    }
  }

  void unassign(std::size_t v) {
    const int c = colors_[v];
    for (std::size_t u : adjacency_[v]) {
      auto& slot = forbid_[u * static_cast<std::size_t>(cap_ + 1) + static_cast<std::size_t>(c)];
      if (--slot == 0) --saturation_[u];
    }
    colors_[v] = 0;
    --colored_;
    used_max_ = used_max_stack_.back();
    used_max_stack_.pop_back();
  }

  SearchOutcome descend() {
    if (colored_ == n_) return SearchOutcome::Found;
    if (budget_ != 0 && ++nodes_ > budget_) return SearchOutcome::BudgetExhausted;
    std::size_t pick = n_;
    for (std::size_t v = 0; v < n_; ++v) {
      if (colors_[v] != 0) continue;
      if (pick == n_ || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && degree_[v] > degree_[pick])) {
        pick = v;
      }
    }
    // Colors above used_max are interchangeable; only the first is tried.
    const int limit = std::min(used_max_ + 1, cap_);
    for (int c = 1; c <= limit; ++c) {
      if (forbidden(pick, c)) continue;
      assign(pick, c);
      const SearchOutcome out = descend();
      if (out != SearchOutcome::Infeasible) return out;
      unassign(pick);
    }
    return SearchOutcome::Infeasible;
  }

  const CompatGraph& g_;
  std::size_t n_;
  int cap_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::size_t colored_ = 0;
  int used_max_ = 0;
  std::vector<int> used_max_stack_;
  std::vector<int> colors_;
  std::vector<int> forbid_;
  std::vector<std::size_t> saturation_;
  std::vector<std::size_t> degree_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Size of a greedily grown clique; a lower bound on the chromatic number.
std::size_t greedy_clique_size(const CompatGraph& g) {
  std::size_t best = g.n_vertices() > 0 ? 1 : 0;
  for (std::size_t start = 0; start < g.n_vertices(); ++start) {
    std::vector<std::size_t> clique{start};
    for (std::size_t v : g.neighbors(start)) {
      if (std::all_of(clique.begin(), clique.end(),
                      [&](std::size_t u) { return g.has_edge(u, v); })) {
        clique.push_back(v);
      }
    }
    best = std::max(best, clique.size());
  }
  return best;
}

}  // namespace

SearchOutcome complete_coloring(const CompatGraph& g, std::vector<int>& colors, int cap,
                                std::size_t node_budget) {
  if (colors.size() != g.n_vertices()) throw DimensionError("partial coloring size mismatch");
  if (cap < 1) return g.n_vertices() == 0 ? SearchOutcome::Found : SearchOutcome::Infeasible;
  DsaturSearch search(g, cap, node_budget);
  if (!search.seed(colors)) return SearchOutcome::Infeasible;
  const SearchOutcome out = search.run();
  if (out == SearchOutcome::Found) colors = search.colors();
  return out;
}

Coloring exact_min_colors(const CompatGraph& g, std::size_t vertex_limit) {
  if (g.n_vertices() > vertex_limit) {
    throw SizeError("exact coloring limited to " + std::to_string(vertex_limit) +
                    " vertices, graph has " + std::to_string(g.n_vertices()));
  }
  Coloring best = greedy_color(g, GreedyStrategy::Dsatur);
  const int lower = static_cast<int>(greedy_clique_size(g));
  for (int k = best.max_color() - 1; k >= lower && k >= 1; --k) {
    std::vector<int> colors(g.n_vertices(), 0);
    if (complete_coloring(g, colors, k) != SearchOutcome::Found) break;
    best = Coloring(std::move(colors));
    k = std::min(k, best.max_color());
  }
  return best;
}

}  // namespace pgroup
