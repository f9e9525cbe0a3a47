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

#include "pgroup/nn.hpp"

#include <cmath>

#include "pgroup/error.hpp"
#include "pgroup/rng.hpp"

namespace pgroup::nn {

Params Params::zeros_like() const {
  Params out;
  out.layers.reserve(layers.size());
  for (const Layer& l : layers) {
    out.layers.push_back(
        Layer{Matrix::Zero(l.weight.rows(), l.weight.cols()), Vector::Zero(l.bias.size())});
  }
  return out;
}

std::size_t Params::size() const {
  std::size_t n = 0;
  for (const Layer& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

bool Params::all_finite() const {
  for (const Layer& l : layers) {
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  }
  return true;
}

void Params::set_zero() {
  for (Layer& l : layers) {
    l.weight.setZero();
    l.bias.setZero();
  }
}

Params& Params::operator+=(const Params& other) {
  if (other.layers.size() != layers.size()) throw DimensionError("parameter layout mismatch");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (other.layers[i].weight.rows() != layers[i].weight.rows() ||
        other.layers[i].weight.cols() != layers[i].weight.cols() ||
        other.layers[i].bias.size() != layers[i].bias.size()) {
      throw DimensionError("parameter layout mismatch");
    }
    layers[i].weight += other.layers[i].weight;
    layers[i].bias += other.layers[i].bias;
  }
  return *this;
}

Params& Params::operator*=(double s) {
  for (Layer& l : layers) {
    l.weight *= s;
    l.bias *= s;
  }
  return *this;
}

std::vector<double> Params::flatten() const {
  std::vector<double> out;
  out.reserve(size());
  for (const Layer& l : layers) {
    out.insert(out.end(), l.weight.data(), l.weight.data() + l.weight.size());
    out.insert(out.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  return out;
}

void Params::unflatten(std::span<const double> values) {
  if (values.size() != size()) throw DimensionError("flat parameter vector has wrong length");
  std::size_t pos = 0;
  for (Layer& l : layers) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(pos), l.weight.size(),
                l.weight.data());
    pos += static_cast<std::size_t>(l.weight.size());
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(pos), l.bias.size(), l.bias.data());
    pos += static_cast<std::size_t>(l.bias.size());
  }
}

DenseNet::DenseNet(std::vector<std::size_t> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw InvalidArgument("a network needs at least input and output sizes");
  for (std::size_t s : sizes_) {
    if (s == 0) throw InvalidArgument("layer sizes must be positive");
  }
  for (std::size_t i = 0; i + 1 < sizes_.size(); ++i) {
    const auto fan_in = static_cast<Eigen::Index>(sizes_[i]);
    const auto fan_out = static_cast<Eigen::Index>(sizes_[i + 1]);
    params_.layers.push_back(Layer{Matrix::Zero(fan_out, fan_in), Vector::Zero(fan_out)});
  }
}

DenseNet::DenseNet(std::vector<std::size_t> layer_sizes, std::uint64_t seed)
    : DenseNet(std::move(layer_sizes)) {
  Rng rng(seed);
  for (Layer& l : params_.layers) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(l.weight.cols()));
    auto draw = [&] { return (2.0 * rng.uniform01() - 1.0) * bound; };
    for (Eigen::Index i = 0; i < l.weight.size(); ++i) l.weight.data()[i] = draw();
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias[i] = draw();
  }
}

DenseNet DenseNet::zeros(std::vector<std::size_t> layer_sizes) {
  return DenseNet(std::move(layer_sizes));
}

void DenseNet::check_input_rows(Eigen::Index rows) const {
  if (static_cast<std::size_t>(rows) != input_dim()) {
    throw DimensionError("network expects input of length " + std::to_string(input_dim()) +
                         ", got " + std::to_string(rows));
  }
}

Matrix DenseNet::forward_rest(Matrix pre, Tape* tape) const {
  if (tape) tape->hidden.clear();
  const auto& layers = params_.layers;
  for (std::size_t i = 1; i < layers.size(); ++i) {
    Matrix act = pre.array().tanh().matrix();
    pre.noalias() = layers[i].weight * act;
    pre.colwise() += layers[i].bias;
    if (tape) tape->hidden.push_back(std::move(act));
  }
  return pre;
}

Matrix DenseNet::forward_batch(const SparseInputs& inputs, Tape* tape) const {
  check_input_rows(inputs.rows());
  const Layer& first = params_.layers.front();
  Matrix pre = first.weight * inputs;
  pre.colwise() += first.bias;
  return forward_rest(std::move(pre), tape);
}

Matrix DenseNet::forward_batch(const Matrix& inputs, Tape* tape) const {
  check_input_rows(inputs.rows());
  const Layer& first = params_.layers.front();
  Matrix pre = first.weight * inputs;
  pre.colwise() += first.bias;
  return forward_rest(std::move(pre), tape);
}

Vector DenseNet::forward(std::span<const double> input) const {
  const Eigen::Map<const Vector> x(input.data(), static_cast<Eigen::Index>(input.size()));
  return forward_batch(Matrix(x)).col(0);
}

Matrix DenseNet::backward_rest(const Tape& tape, const Matrix& output_grad, Params& grad) const {
  const auto& layers = params_.layers;
  if (static_cast<std::size_t>(output_grad.rows()) != output_dim()) {
    throw DimensionError("output gradient has wrong length");
  }
  if (tape.hidden.size() + 1 != layers.size()) throw DimensionError("tape does not match network");
  Matrix delta = output_grad;
  for (std::size_t i = layers.size() - 1; i >= 1; --i) {
    const Matrix& act = tape.hidden[i - 1];
    grad.layers[i].weight.noalias() += delta * act.transpose();
    grad.layers[i].bias += delta.rowwise().sum();
    Matrix back = layers[i].weight.transpose() * delta;
    delta = back.array() * (1.0 - act.array().square());
  }
  return delta;
}

void DenseNet::backward_batch(const SparseInputs& inputs, const Tape& tape,
                              const Matrix& output_grad, Params& grad) const {
  check_input_rows(inputs.rows());
  const Matrix delta = backward_rest(tape, output_grad, grad);
  grad.layers.front().weight += delta * inputs.transpose();
  grad.layers.front().bias += delta.rowwise().sum();
}

void DenseNet::backward_batch(const Matrix& inputs, const Tape& tape, const Matrix& output_grad,
                              Params& grad) const {
  check_input_rows(inputs.rows());
  const Matrix delta = backward_rest(tape, output_grad, grad);
  grad.layers.front().weight.noalias() += delta * inputs.transpose();
  grad.layers.front().bias += delta.rowwise().sum();
}

Params DenseNet::backward(std::span<const double> input, std::span<const double> output_grad) const {
  const Eigen::Map<const Vector> x(input.data(), static_cast<Eigen::Index>(input.size()));
  const Eigen::Map<const Vector> g(output_grad.data(),
                                   static_cast<Eigen::Index>(output_grad.size()));
  check_input_rows(x.size());
  if (static_cast<std::size_t>(g.size()) != output_dim()) {
    throw DimensionError("output gradient has wrong length");
  }
  Tape tape;
  const Matrix xm = x;
  forward_batch(xm, &tape);
  Params grad = params_.zeros_like();
  backward_batch(xm, tape, Matrix(g), grad);
  return grad;
}

Adam::Adam(const DenseNet& net, AdamConfig cfg)
    : cfg_(cfg),
      m_(net.params().zeros_like()),
      v_(net.params().zeros_like()),
      acc_(net.params().zeros_like()) {
  if (cfg_.accumulation_period == 0) throw InvalidArgument("accumulation period must be >= 1");
}

bool Adam::accumulate_and_step(DenseNet& net, const Params& grad) {
  acc_ += grad;
  if (++pending_ < cfg_.accumulation_period) return false;

  acc_ *= 1.0 / static_cast<double>(cfg_.accumulation_period);
  ++t_;
  const double b1 = cfg_.beta1;
  const double b2 = cfg_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  auto& theta = net.params().layers;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
      m = b1 * m + (1.0 - b1) * g;
      v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
      param.array() -= cfg_.learning_rate * (m.array() / c1) /
                       ((v.array() / c2).sqrt() + cfg_.epsilon);
    };
    update(theta[i].weight, m_.layers[i].weight, v_.layers[i].weight, acc_.layers[i].weight);
    update(theta[i].bias, m_.layers[i].bias, v_.layers[i].bias, acc_.layers[i].bias);
  }
  acc_.set_zero();
  pending_ = 0;
  if (!net.params().all_finite()) {
    throw NumericError("non-finite parameter after Adam step " + std::to_string(t_));
  }
  return true;
}

void to_json(nlohmann::json& j, const Params& p) {
  j = nlohmann::json::array();
  for (const Layer& l : p.layers) {
    j.push_back({{"rows", l.weight.rows()},
                 {"cols", l.weight.cols()},
                 {"weight", std::vector<double>(l.weight.data(), l.weight.data() + l.weight.size())},
                 {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
  }
}

void from_json(const nlohmann::json& j, Params& p) {
  p.layers.clear();
  for (const auto& jl : j) {
    const auto rows = jl.at("rows").get<Eigen::Index>();
    const auto cols = jl.at("cols").get<Eigen::Index>();
    const auto w = jl.at("weight").get<std::vector<double>>();
    const auto b = jl.at("bias").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(w.size()) != rows * cols ||
        static_cast<Eigen::Index>(b.size()) != rows) {
      throw DimensionError("checkpoint layer has inconsistent shape");
    }
    Layer l{Matrix(rows, cols), Vector(rows)};
    std::copy(w.begin(), w.end(), l.weight.data());
    std::copy(b.begin(), b.end(), l.bias.data());
    p.layers.push_back(std::move(l));
  }
}

void to_json(nlohmann::json& j, const DenseNet& net) {
  j = {{"layer_sizes", net.layer_sizes()}, {"activation", "tanh"}, {"params", net.params()}};
}

DenseNet dense_net_from_json(const nlohmann::json& j) {
  DenseNet net = DenseNet::zeros(j.at("layer_sizes").get<std::vector<std::size_t>>());
  Params p = j.at("params").get<Params>();
  if (p.layers.size() != net.params().layers.size()) {
    throw DimensionError("checkpoint parameters do not match layer sizes");
  }
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    if (p.layers[i].weight.rows() != net.params().layers[i].weight.rows() ||
        p.layers[i].weight.cols() != net.params().layers[i].weight.cols()) {
      throw DimensionError("checkpoint parameters do not match layer sizes");
    }
  }
  net.params() = std::move(p);
  return net;
}

void to_json(nlohmann::json& j, const AdamConfig& c) {
  j = {{"learning_rate", c.learning_rate},
       {"beta1", c.beta1},
       {"beta2", c.beta2},
       {"epsilon", c.epsilon},
       {"accumulation_period", c.accumulation_period}};
}

void from_json(const nlohmann::json& j, AdamConfig& c) {
  j.at("learning_rate").get_to(c.learning_rate);
  j.at("beta1").get_to(c.beta1);
  j.at("beta2").get_to(c.beta2);
  j.at("epsilon").get_to(c.epsilon);
  j.at("accumulation_period").get_to(c.accumulation_period);
}

void to_json(nlohmann::json& j, const Adam& a) {
  j = {{"config", a.cfg_},
       {"step", a.t_},
       {"pending", a.pending_},
       {"m", a.m_},
       {"v", a.v_},
       {"accumulator", a.acc_}};
}

void from_json(const nlohmann::json& j, Adam& a) {
  j.at("config").get_to(a.cfg_);
  j.at("step").get_to(a.t_);
  j.at("pending").get_to(a.pending_);
  j.at("m").get_to(a.m_);
  j.at("v").get_to(a.v_);
  j.at("accumulator").get_to(a.acc_);
}

}  // namespace pgroup::nn
