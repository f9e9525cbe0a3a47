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
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pgroup/graph.hpp"
#include "pgroup/hamiltonian.hpp"
#include "pgroup/measurement.hpp"
#include "pgroup/nn.hpp"
#include "pgroup/rng.hpp"

namespace pgroup {

inline constexpr std::size_t kDefaultLookaheadBudget = 20000;

/**
 * Partial coloring built one vertex at a time. `cursor` counts colored
 * vertices; the next vertex is order()[cursor] of the owning ColoringMdp.
 */
struct ColoringState {
  std::vector<int> colors;  // by vertex index, 0 = uncolored
  std::size_t cursor = 0;
  int current_max = 0;

  friend bool operator==(const ColoringState&, const ColoringState&) = default;
};

/// Allowed colors for the next vertex; allowed[c - 1] covers color c.
struct ActionMask {
  std::vector<char> allowed;

  bool allows(int color) const {
    return color >= 1 && static_cast<std::size_t>(color) <= allowed.size() &&
           allowed[static_cast<std::size_t>(color - 1)];
  }
  std::size_t count() const;
};

/**
 * The coloring MDP over a complement graph.
 *
 * Vertices are colored in a fixed order (descending degree, ties by index),
 * so every state has exactly one parent. An action picks the color of the
 * next vertex. A color is legal when it is not used by a colored neighbor,
 * does not exceed min(current_max + 1, color_cap), and the resulting
 * partial coloring can still be completed within color_cap. The last check
 * is a DSATUR search bounded by `lookahead_budget` nodes (0 disables the
 * check); an exhausted search counts as completable.
 */
class ColoringMdp {
 public:
  ColoringMdp(CompatGraph graph, int color_cap,
              std::size_t lookahead_budget = kDefaultLookaheadBudget);

  const CompatGraph& graph() const noexcept { return graph_; }
  int color_cap() const noexcept { return cap_; }
  std::size_t n_vertices() const noexcept { return graph_.n_vertices(); }
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  std::size_t lookahead_budget() const noexcept { return budget_; }

  ColoringState initial_state() const;
  bool is_terminal(const ColoringState& s) const { return s.cursor == n_vertices(); }
  std::size_t next_vertex(const ColoringState& s) const;

  /// Throws NoActionError on a terminal state.
  ActionMask legal_actions(const ColoringState& s) const;
  ColoringState apply(const ColoringState& s, int color) const;

  /// One-hot over {uncolored, 1..cap} per vertex, then one-hot of the next
  /// vertex (absent in terminal states).
  std::size_t encoding_size() const { return n_vertices() * (static_cast<std::size_t>(cap_) + 2); }
  std::vector<double> encode(const ColoringState& s) const;
  std::vector<std::size_t> hot_indices(const ColoringState& s) const;

 private:
  CompatGraph graph_;
  int cap_;
  std::size_t budget_;
  std::vector<std::size_t> order_;
};

/// Masked softmax of log-flows: probabilities proportional to exp(logit) on
/// allowed actions and exactly zero elsewhere.
std::vector<double> masked_softmax(std::span<const double> log_flows, const ActionMask& mask);

std::vector<double> forward_policy(const nn::DenseNet& net, const ColoringMdp& mdp,
                                   const ColoringState& s);

struct Trajectory {
  std::vector<ColoringState> states;  // s_0 .. s_n
  std::vector<ActionMask> masks;      // legal actions of s_0 .. s_{n-1}
  std::vector<int> actions;           // actions[t] leads from states[t] to states[t+1]
  Coloring coloring;
  double m_est = 0.0;
  double reward = 0.0;
};

/// Everything needed to score terminal colorings.
struct RewardContext {
  const QubitHamiltonian* hamiltonian;
  MeasurementConfig measurement;
};

Trajectory sample_trajectory(const nn::DenseNet& net, const ColoringMdp& mdp,
                             const RewardContext& ctx, Rng& rng);

/// `count` trajectories advanced in lockstep with one batched forward pass
/// per step. Consumes the Rng in trajectory-major order within each step.
std::vector<Trajectory> sample_trajectories(const nn::DenseNet& net, const ColoringMdp& mdp,
                                            const RewardContext& ctx, std::size_t count,
                                            Rng& rng);

/**
 * Flow-matching loss summed over the non-initial states of each trajectory:
 *   sum_t (log F(s_{t-1} -> s_t) - log sum_a F(s_t -> a))^2
 * with the outflow of the terminal state replaced by its reward. States have
 * a single parent, so the inflow is one edge flow. For a batch the mean over
 * trajectories is returned and, when `grad` is given, its gradient is added.
 * Throws NumericError on a non-finite value.
 */
double flow_matching_loss(const nn::DenseNet& net, const ColoringMdp& mdp,
                          std::span<const Trajectory> batch, nn::Params* grad = nullptr);
double flow_matching_loss(const nn::DenseNet& net, const ColoringMdp& mdp,
                          const Trajectory& trajectory, nn::Params* grad = nullptr);

struct TrainConfig {
  std::size_t iterations = 1000;
  std::size_t trajectories_per_iteration = 16;
  std::uint64_t seed = 0;
  int mask_extra_colors = 0;
  MeasurementConfig measurement;
  CommutationMode mode = CommutationMode::FC;
  std::vector<std::size_t> hidden_layers{512, 512};
  nn::AdamConfig adam;
  std::size_t lookahead_budget = kDefaultLookaheadBudget;
  /// Stop early once the mean loss over the last ten iterations falls below
  /// this value; 0 disables.
  double stop_loss = 0.0;

  void validate() const;
};

struct SampleRecord {
  Coloring coloring;  // canonical labels
  double m_est = 0.0;
  double reward = 0.0;
  std::size_t count = 0;
};

struct IterationLog {
  std::size_t iteration = 0;
  double mean_loss = 0.0;
  double best_reward = 0.0;
  double best_m_est = 0.0;
  int best_color_count = 0;
};

/// Sampler state: Hamiltonian, graph, MDP, network and optimizer.
class TrainedSampler {
 public:
  TrainedSampler(QubitHamiltonian h, TrainConfig cfg);

  const QubitHamiltonian& hamiltonian() const noexcept { return h_; }
  const TrainConfig& config() const noexcept { return cfg_; }
  const ColoringMdp& mdp() const noexcept { return mdp_; }
  const CompatGraph& graph() const noexcept { return mdp_.graph(); }
  int greedy_cap_colors() const noexcept { return greedy_colors_; }
  const nn::DenseNet& net() const noexcept { return net_; }
  nn::DenseNet& net() noexcept { return net_; }
  nn::Adam& optimizer() noexcept { return adam_; }
  const nn::Adam& optimizer() const noexcept { return adam_; }
  Rng& rng() noexcept { return rng_; }
  std::size_t iterations_done() const noexcept { return iterations_done_; }
  RewardContext reward_context() const { return {&h_, cfg_.measurement}; }

  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static TrainedSampler load(std::istream& in);
  static TrainedSampler load(const std::filesystem::path& path);

 private:
  friend struct TrainResult;
  TrainedSampler(QubitHamiltonian h, TrainConfig cfg, int greedy_colors);

  QubitHamiltonian h_;
  TrainConfig cfg_;
  int greedy_colors_;
  ColoringMdp mdp_;
  nn::DenseNet net_;
  nn::Adam adam_;
  Rng rng_;
  std::size_t iterations_done_ = 0;
};

struct TrainResult {
  TrainedSampler sampler;
  std::vector<IterationLog> log;
  /// Every distinct terminal partition seen during training.
  std::map<std::vector<int>, SampleRecord> seen;
  SampleRecord best_by_m_est;   // lowest M_est, ties by fewer colors
  SampleRecord best_by_reward;  // highest reward

  /// Runs `iterations` more iterations on the contained sampler.
  void run(std::size_t iterations,
           const std::function<void(const IterationLog&)>& on_iteration = {});
};

TrainResult train(const QubitHamiltonian& h, const TrainConfig& cfg,
                  const std::function<void(const IterationLog&)>& on_iteration = {});

/// Resumes from a saved sampler for `iterations` more iterations.
TrainResult resume_training(TrainedSampler sampler, std::size_t iterations,
                            const std::function<void(const IterationLog&)>& on_iteration = {});

/// n independent terminal samples from the current policy.
std::vector<SampleRecord> sample_groupings(const TrainedSampler& sampler, std::size_t n, Rng& rng);

}  // namespace pgroup
