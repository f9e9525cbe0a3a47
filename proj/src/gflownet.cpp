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

#include "pgroup/gflownet.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "pgroup/error.hpp"

namespace pgroup {

namespace {

constexpr std::size_t kMaxRestarts = 1000;
constexpr std::uint64_t kStreamSalt = 0x9e3779b97f4a7c15ULL;

nn::SparseInputs encode_batch(const ColoringMdp& mdp, std::span<const ColoringState* const> states) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(states.size() * (mdp.n_vertices() + 1));
  for (std::size_t col = 0; col < states.size(); ++col) {
    for (std::size_t idx : mdp.hot_indices(*states[col])) {
      entries.emplace_back(static_cast<int>(idx), static_cast<int>(col), 1.0);
    }
  }
  nn::SparseInputs x(static_cast<Eigen::Index>(mdp.encoding_size()),
                     static_cast<Eigen::Index>(states.size()));
  x.setFromTriplets(entries.begin(), entries.end());
  return x;
}

void finalize(Trajectory& t, const ColoringMdp& mdp, const RewardContext& ctx) {
  t.coloring = Coloring(t.states.back().colors);
  const Grouping grouping = coloring_to_grouping(mdp.graph(), t.coloring);
  t.m_est = estimate_measurements(*ctx.hamiltonian, grouping, ctx.measurement.epsilon);
  t.reward = reward_from(ctx.hamiltonian->size(), t.coloring.max_color(), t.m_est,
                         ctx.measurement.lambda0);
}

}  // namespace

std::size_t ActionMask::count() const {
  return static_cast<std::size_t>(std::count(allowed.begin(), allowed.end(), char{1}));
}

ColoringMdp::ColoringMdp(CompatGraph graph, int color_cap, std::size_t lookahead_budget)
    : graph_(std::move(graph)), cap_(color_cap), budget_(lookahead_budget) {
  if (cap_ < 1) throw InvalidArgument("color cap must be at least 1");
  order_.resize(graph_.n_vertices());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::vector<std::size_t> degree(order_.size());
  for (std::size_t v = 0; v < degree.size(); ++v) degree[v] = graph_.degree(v);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
}

ColoringState ColoringMdp::initial_state() const {
  return ColoringState{std::vector<int>(n_vertices(), 0), 0, 0};
}

std::size_t ColoringMdp::next_vertex(const ColoringState& s) const {
  if (is_terminal(s)) throw NoActionError("terminal state has no next vertex");
  return order_[s.cursor];
}

ActionMask ColoringMdp::legal_actions(const ColoringState& s) const {
  const std::size_t v = next_vertex(s);
  ActionMask mask;
  mask.allowed.assign(static_cast<std::size_t>(cap_), 0);
  std::vector<char> used(static_cast<std::size_t>(cap_) + 2, 0);
  for (std::size_t u : graph_.neighbors(v)) {
    const int c = s.colors[u];
    if (c > 0 && c <= cap_) used[static_cast<std::size_t>(c)] = 1;
  }
  const int limit = std::min(s.current_max + 1, cap_);
  const std::size_t remaining = n_vertices() - s.cursor - 1;
  for (int c = 1; c <= limit; ++c) {
    if (used[static_cast<std::size_t>(c)]) continue;
    const int max_after = std::max(s.current_max, c);
    // Every remaining vertex can take its own fresh color.
    const bool trivially_completable = remaining <= static_cast<std::size_t>(cap_ - max_after);
    if (budget_ != 0 && !trivially_completable) {
      std::vector<int> trial = s.colors;
      trial[v] = c;
      if (complete_coloring(graph_, trial, cap_, budget_) == SearchOutcome::Infeasible) continue;
    }
    mask.allowed[static_cast<std::size_t>(c - 1)] = 1;
  }
  return mask;
}

ColoringState ColoringMdp::apply(const ColoringState& s, int color) const {
  const std::size_t v = next_vertex(s);
  if (color < 1 || color > cap_) throw InvalidArgument("color outside 1..cap");
  ColoringState next = s;
  next.colors[v] = color;
  next.cursor += 1;
  next.current_max = std::max(s.current_max, color);
  return next;
}

std::vector<std::size_t> ColoringMdp::hot_indices(const ColoringState& s) const {
  const std::size_t stride = static_cast<std::size_t>(cap_) + 1;
  std::vector<std::size_t> hot;
  hot.reserve(n_vertices() + 1);
  for (std::size_t v = 0; v < n_vertices(); ++v) {
    hot.push_back(v * stride + static_cast<std::size_t>(s.colors[v]));
  }
  if (!is_terminal(s)) hot.push_back(n_vertices() * stride + order_[s.cursor]);
  return hot;
}

std::vector<double> ColoringMdp::encode(const ColoringState& s) const {
  std::vector<double> x(encoding_size(), 0.0);
  for (std::size_t i : hot_indices(s)) x[i] = 1.0;
  return x;
}

std::vector<double> masked_softmax(std::span<const double> log_flows, const ActionMask& mask) {
  if (log_flows.size() != mask.allowed.size()) throw DimensionError("mask/logit size mismatch");
  double peak = -INFINITY;
  for (std::size_t a = 0; a < log_flows.size(); ++a) {
    if (mask.allowed[a]) peak = std::max(peak, log_flows[a]);
  }
  if (peak == -INFINITY) throw NoActionError("no legal action");
  std::vector<double> p(log_flows.size(), 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < log_flows.size(); ++a) {
    if (!mask.allowed[a]) continue;
    p[a] = std::exp(log_flows[a] - peak);
    total += p[a];
  }
  for (double& x : p) x /= total;
  return p;
}

std::vector<double> forward_policy(const nn::DenseNet& net, const ColoringMdp& mdp,
                                   const ColoringState& s) {
  const ActionMask mask = mdp.legal_actions(s);
  const nn::Vector logits = net.forward(mdp.encode(s));
  return masked_softmax(std::span<const double>(logits.data(), logits.size()), mask);
}

Trajectory sample_trajectory(const nn::DenseNet& net, const ColoringMdp& mdp,
                             const RewardContext& ctx, Rng& rng) {
  for (std::size_t attempt = 0; attempt < kMaxRestarts; ++attempt) {
    Trajectory t;
    t.states.push_back(mdp.initial_state());
    bool dead_end = false;
    while (!mdp.is_terminal(t.states.back())) {
      const ColoringState& s = t.states.back();
      ActionMask mask = mdp.legal_actions(s);
      if (mask.count() == 0) {
        dead_end = true;
        break;
      }
      const nn::Vector logits = net.forward(mdp.encode(s));
      const auto p = masked_softmax(std::span<const double>(logits.data(), logits.size()), mask);
      const int action = static_cast<int>(rng.categorical(p)) + 1;
      t.masks.push_back(std::move(mask));
      t.actions.push_back(action);
      t.states.push_back(mdp.apply(s, action));
    }
    if (dead_end) continue;
    finalize(t, mdp, ctx);
    return t;
  }
  throw Error("sampling hit dead ends " + std::to_string(kMaxRestarts) +
              " times; raise the lookahead budget or the color cap");
}

std::vector<Trajectory> sample_trajectories(const nn::DenseNet& net, const ColoringMdp& mdp,
                                            const RewardContext& ctx, std::size_t count,
                                            Rng& rng) {
  std::vector<Trajectory> out(count);
  std::vector<char> dead(count, 0);
  for (Trajectory& t : out) t.states.push_back(mdp.initial_state());
  std::vector<const ColoringState*> current(count);
  for (std::size_t step = 0; step < mdp.n_vertices(); ++step) {
    for (std::size_t i = 0; i < count; ++i) current[i] = &out[i].states.back();
    const nn::Matrix logits = net.forward_batch(encode_batch(mdp, current));
    for (std::size_t i = 0; i < count; ++i) {
      if (dead[i]) continue;
      Trajectory& t = out[i];
      ActionMask mask = mdp.legal_actions(t.states.back());
      if (mask.count() == 0) {
        dead[i] = 1;
        continue;
      }
      const auto p = masked_softmax(
          std::span<const double>(logits.col(static_cast<Eigen::Index>(i)).data(),
                                  static_cast<std::size_t>(logits.rows())),
          mask);
      const int action = static_cast<int>(rng.categorical(p)) + 1;
      ColoringState next = mdp.apply(t.states.back(), action);
      t.masks.push_back(std::move(mask));
      t.actions.push_back(action);
      t.states.push_back(std::move(next));
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (dead[i]) {
      out[i] = sample_trajectory(net, mdp, ctx, rng);
    } else {
      finalize(out[i], mdp, ctx);
    }
  }
  return out;
}

double flow_matching_loss(const nn::DenseNet& net, const ColoringMdp& mdp,
                          std::span<const Trajectory> batch, nn::Params* grad) {
  if (batch.empty()) throw EmptyInputError("empty trajectory batch");
  std::vector<const ColoringState*> inputs;
  std::vector<std::size_t> base;
  for (const Trajectory& t : batch) {
    if (t.states.size() != t.actions.size() + 1 || t.masks.size() != t.actions.size()) {
      throw InvalidArgument("malformed trajectory");
    }
    base.push_back(inputs.size());
    for (std::size_t k = 0; k + 1 < t.states.size(); ++k) inputs.push_back(&t.states[k]);
  }
  const nn::SparseInputs x = encode_batch(mdp, inputs);
  nn::DenseNet::Tape tape;
  const nn::Matrix log_flow = net.forward_batch(x, grad ? &tape : nullptr);
  nn::Matrix out_grad;
  if (grad) out_grad = nn::Matrix::Zero(log_flow.rows(), log_flow.cols());

  const double scale = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const Trajectory& t = batch[b];
    const std::size_t n = t.actions.size();
    for (std::size_t step = 1; step <= n; ++step) {
      const auto parent_col = static_cast<Eigen::Index>(base[b] + step - 1);
      const auto action_row = static_cast<Eigen::Index>(t.actions[step - 1] - 1);
      const double inflow = log_flow(action_row, parent_col);
      double outflow = 0.0;
      std::vector<double> child_probs;
      if (step < n) {
        const auto col = static_cast<Eigen::Index>(base[b] + step);
        const ActionMask& mask = t.masks[step];
        child_probs = masked_softmax(
            std::span<const double>(log_flow.col(col).data(), static_cast<std::size_t>(log_flow.rows())),
            mask);
        double peak = -INFINITY;
        for (std::size_t a = 0; a < mask.allowed.size(); ++a) {
          if (mask.allowed[a]) peak = std::max(peak, log_flow(static_cast<Eigen::Index>(a), col));
        }
        double sum = 0.0;
        for (std::size_t a = 0; a < mask.allowed.size(); ++a) {
          if (mask.allowed[a]) sum += std::exp(log_flow(static_cast<Eigen::Index>(a), col) - peak);
        }
        outflow = peak + std::log(sum);
      } else {
        outflow = std::log(t.reward);
      }
      const double residual = inflow - outflow;
      total += residual * residual;
      if (grad) {
        const double g = 2.0 * residual * scale;
        out_grad(action_row, parent_col) += g;
        if (step < n) {
          const auto col = static_cast<Eigen::Index>(base[b] + step);
          for (std::size_t a = 0; a < child_probs.size(); ++a) {
            out_grad(static_cast<Eigen::Index>(a), col) -= g * child_probs[a];
          }
        }
      }
    }
  }
  const double mean = total * scale;
  if (!std::isfinite(mean)) throw NumericError("non-finite flow-matching loss");
  if (grad) net.backward_batch(x, tape, out_grad, *grad);
  return mean;
}

double flow_matching_loss(const nn::DenseNet& net, const ColoringMdp& mdp,
                          const Trajectory& trajectory, nn::Params* grad) {
  return flow_matching_loss(net, mdp, std::span<const Trajectory>(&trajectory, 1), grad);
}

void TrainConfig::validate() const {
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  if (trajectories_per_iteration < 1) throw InvalidArgument("trajectories per iteration must be >= 1");
  if (mask_extra_colors < 0) throw InvalidArgument("mask_extra_colors must be >= 0");
  if (stop_loss < 0.0) throw InvalidArgument("stop_loss must be >= 0");
  for (std::size_t h : hidden_layers) {
    if (h == 0) throw InvalidArgument("hidden layer sizes must be positive");
  }
  measurement.validate();
}

namespace {

std::vector<std::size_t> layer_sizes_for(const ColoringMdp& mdp, const TrainConfig& cfg) {
  std::vector<std::size_t> sizes{mdp.encoding_size()};
  sizes.insert(sizes.end(), cfg.hidden_layers.begin(), cfg.hidden_layers.end());
  sizes.push_back(static_cast<std::size_t>(mdp.color_cap()));
  return sizes;
}

// Color count of random-sequential greedy under the run's seed.
int greedy_cap(const QubitHamiltonian& h, const TrainConfig& cfg) {
  cfg.validate();
  const CompatGraph g = build_complement_graph(h, cfg.mode);
  return greedy_color(g, GreedyStrategy::RandomSequential, cfg.seed).max_color();
}

}  // namespace

TrainedSampler::TrainedSampler(QubitHamiltonian h, TrainConfig cfg, int greedy_colors)
    : h_(std::move(h)),
      cfg_(std::move(cfg)),
      greedy_colors_(greedy_colors),
      mdp_(build_complement_graph(h_, cfg_.mode), greedy_colors + cfg_.mask_extra_colors,
           cfg_.lookahead_budget) {
  Rng streams(cfg_.seed ^ kStreamSalt);
  net_ = nn::DenseNet(layer_sizes_for(mdp_, cfg_), streams.next());
  adam_ = nn::Adam(net_, cfg_.adam);
  rng_ = Rng(streams.next());
}

TrainedSampler::TrainedSampler(QubitHamiltonian h, TrainConfig cfg)
    : TrainedSampler(h, cfg, greedy_cap(h, cfg)) {}

void TrainResult::run(std::size_t iterations,
                      const std::function<void(const IterationLog&)>& on_iteration) {
  TrainedSampler& s = sampler;
  const RewardContext ctx = s.reward_context();
  std::deque<double> recent;
  for (std::size_t it = 0; it < iterations; ++it) {
    auto batch = sample_trajectories(s.net_, s.mdp_, ctx, s.cfg_.trajectories_per_iteration, s.rng_);
    for (const Trajectory& t : batch) {
      const Coloring key = t.coloring.canonical();
      auto [pos, inserted] =
          seen.try_emplace(key.colors(), SampleRecord{key, t.m_est, t.reward, 0});
      ++pos->second.count;
      const SampleRecord& rec = pos->second;
      const bool first = best_by_m_est.coloring.size() == 0;
      if (first || rec.m_est < best_by_m_est.m_est ||
          (rec.m_est == best_by_m_est.m_est &&
           rec.coloring.max_color() < best_by_m_est.coloring.max_color())) {
        best_by_m_est = rec;
      }
      if (first || rec.reward > best_by_reward.reward) best_by_reward = rec;
    }
    nn::Params grad = s.net_.params().zeros_like();
    double loss = 0.0;
    try {
      loss = flow_matching_loss(s.net_, s.mdp_, batch, &grad);
      if (!grad.all_finite()) throw NumericError("non-finite gradient");
      s.adam_.accumulate_and_step(s.net_, grad);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(s.iterations_done_ + 1) + ": " + e.what());
    }
    ++s.iterations_done_;
    IterationLog entry{s.iterations_done_, loss, best_by_reward.reward, best_by_m_est.m_est,
                       best_by_m_est.coloring.max_color()};
    log.push_back(entry);
    if (on_iteration) on_iteration(entry);

    recent.push_back(loss);
    if (recent.size() > 10) recent.pop_front();
    if (s.cfg_.stop_loss > 0.0 && recent.size() == 10) {
      const double avg = std::accumulate(recent.begin(), recent.end(), 0.0) / 10.0;
      if (avg < s.cfg_.stop_loss) break;
    }
  }
}

TrainResult train(const QubitHamiltonian& h, const TrainConfig& cfg,
                  const std::function<void(const IterationLog&)>& on_iteration) {
  TrainResult result{TrainedSampler(h, cfg), {}, {}, {}, {}};
  result.run(cfg.iterations, on_iteration);
  return result;
}

TrainResult resume_training(TrainedSampler sampler, std::size_t iterations,
                            const std::function<void(const IterationLog&)>& on_iteration) {
  TrainResult result{std::move(sampler), {}, {}, {}, {}};
  result.run(iterations, on_iteration);
  return result;
}

std::vector<SampleRecord> sample_groupings(const TrainedSampler& sampler, std::size_t n, Rng& rng) {
  if (n < 1) throw InvalidArgument("sample count must be >= 1");
  constexpr std::size_t kChunk = 256;
  std::vector<SampleRecord> out;
  out.reserve(n);
  const RewardContext ctx = sampler.reward_context();
  while (out.size() < n) {
    const std::size_t take = std::min(kChunk, n - out.size());
    for (const Trajectory& t : sample_trajectories(sampler.net(), sampler.mdp(), ctx, take, rng)) {
      out.push_back(SampleRecord{t.coloring.canonical(), t.m_est, t.reward, 1});
    }
  }
  return out;
}

}  // namespace pgroup
