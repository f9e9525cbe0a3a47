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

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace pgroup::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
/// Batched network input, one sample per column.
using SparseInputs = Eigen::SparseMatrix<double>;

struct Layer {
  Matrix weight;  // fan_out x fan_in
  Vector bias;    // fan_out
};

/// Parameter-shaped container; used for θ, gradients and optimizer moments.
struct Params {
  std::vector<Layer> layers;

  Params zeros_like() const;
  std::size_t size() const;
  bool all_finite() const;
  void set_zero();
  Params& operator+=(const Params& other);
  Params& operator*=(double s);
  /// Flattened view in layer order, weight (column-major) then bias.
  std::vector<double> flatten() const;
  void unflatten(std::span<const double> values);
};

/**
 * Fully connected network: tanh on every hidden layer, linear output.
 *
 * Layer sizes are [input, hidden..., output]. Parameters are initialized
 * uniformly in [-1/sqrt(fan_in), 1/sqrt(fan_in)] from a seeded Rng.
 */
class DenseNet {
 public:
  /// Hidden activations recorded by forward_batch for backward_batch.
  struct Tape {
    std::vector<Matrix> hidden;
  };

  DenseNet() = default;
  DenseNet(std::vector<std::size_t> layer_sizes, std::uint64_t seed);

  static DenseNet zeros(std::vector<std::size_t> layer_sizes);

  const std::vector<std::size_t>& layer_sizes() const noexcept { return sizes_; }
  std::size_t input_dim() const noexcept { return sizes_.front(); }
  std::size_t output_dim() const noexcept { return sizes_.back(); }
  std::size_t parameter_count() const { return params_.size(); }

  Params& params() noexcept { return params_; }
  const Params& params() const noexcept { return params_; }

  Vector forward(std::span<const double> input) const;

  /// Gradient of <forward(input), output_grad> with respect to the parameters.
  Params backward(std::span<const double> input, std::span<const double> output_grad) const;

  Matrix forward_batch(const SparseInputs& inputs, Tape* tape = nullptr) const;
  Matrix forward_batch(const Matrix& inputs, Tape* tape = nullptr) const;

  /// Adds the gradient of sum_k <out_k, output_grad_k> to `grad`.
  void backward_batch(const SparseInputs& inputs, const Tape& tape, const Matrix& output_grad,
                      Params& grad) const;
  void backward_batch(const Matrix& inputs, const Tape& tape, const Matrix& output_grad,
                      Params& grad) const;

 private:
  explicit DenseNet(std::vector<std::size_t> layer_sizes);

  Matrix forward_rest(Matrix pre_activation, Tape* tape) const;
  /// Returns the first-layer delta after filling gradients of layers 1..L-1.
  Matrix backward_rest(const Tape& tape, const Matrix& output_grad, Params& grad) const;
  void check_input_rows(Eigen::Index rows) const;

  std::vector<std::size_t> sizes_;
  Params params_;
};

struct AdamConfig {
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t accumulation_period = 10;
};

/**
 * Adam with gradient accumulation. Each call adds one gradient; every
 * `accumulation_period` calls the mean of the accumulated gradients drives
 * one bias-corrected Adam update and the accumulator is cleared.
 */
class Adam {
 public:
  Adam() = default;
  Adam(const DenseNet& net, AdamConfig cfg = {});

  /// True when this call completed a period and updated `net`.
  bool accumulate_and_step(DenseNet& net, const Params& grad);

  const AdamConfig& config() const noexcept { return cfg_; }
  std::size_t step_count() const noexcept { return t_; }
  std::size_t pending() const noexcept { return pending_; }
  const Params& first_moment() const noexcept { return m_; }
  const Params& second_moment() const noexcept { return v_; }
  const Params& accumulator() const noexcept { return acc_; }

  friend void to_json(nlohmann::json& j, const Adam& a);
  friend void from_json(const nlohmann::json& j, Adam& a);

 private:
  AdamConfig cfg_;
  std::size_t t_ = 0;
  std::size_t pending_ = 0;
  Params m_;
  Params v_;
  Params acc_;
};

void to_json(nlohmann::json& j, const Params& p);
void from_json(const nlohmann::json& j, Params& p);
void to_json(nlohmann::json& j, const DenseNet& net);
DenseNet dense_net_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const AdamConfig& c);
void from_json(const nlohmann::json& j, AdamConfig& c);

}  // namespace pgroup::nn
