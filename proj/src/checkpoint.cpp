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

// Sampler checkpoints: a versioned JSON document holding the Hamiltonian,
// the training configuration, the network, the Adam state and the sampling
// stream, enough to resume training bit-for-bit.
//
//   {
//     "format": "pgroup-sampler", "version": 1,
//     "hamiltonian": "<HamiltonianFile text>",
//     "train_config": {...}, "greedy_colors": 2, "color_cap": 2,
//     "iterations_done": 1000,
//     "network": {"layer_sizes": [...], "activation": "tanh", "params": [...]},
//     "adam": {...}, "rng_state": "<mt19937_64 state>"
//   }

#include <fstream>

#include "pgroup/error.hpp"
#include "pgroup/gflownet.hpp"
#include "pgroup/hamiltonian_io.hpp"

namespace pgroup {

namespace {

constexpr const char* kFormat = "pgroup-sampler";
constexpr int kVersion = 1;

nlohmann::json config_to_json(const TrainConfig& c) {
  return {{"iterations", c.iterations},
          {"trajectories_per_iteration", c.trajectories_per_iteration},
          {"seed", c.seed},
          {"mask_extra_colors", c.mask_extra_colors},
          {"epsilon", c.measurement.epsilon},
          {"lambda0", c.measurement.lambda0},
          {"mode", std::string(to_string(c.mode))},
          {"hidden_layers", c.hidden_layers},
          {"adam", c.adam},
          {"lookahead_budget", c.lookahead_budget},
          {"stop_loss", c.stop_loss}};
}

TrainConfig config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  j.at("iterations").get_to(c.iterations);
  j.at("trajectories_per_iteration").get_to(c.trajectories_per_iteration);
  j.at("seed").get_to(c.seed);
  j.at("mask_extra_colors").get_to(c.mask_extra_colors);
  j.at("epsilon").get_to(c.measurement.epsilon);
  j.at("lambda0").get_to(c.measurement.lambda0);
  c.mode = parse_mode(j.at("mode").get<std::string>());
  j.at("hidden_layers").get_to(c.hidden_layers);
  j.at("adam").get_to(c.adam);
  j.at("lookahead_budget").get_to(c.lookahead_budget);
  j.at("stop_loss").get_to(c.stop_loss);
  return c;
}

}  // namespace

void TrainedSampler::save(std::ostream& out) const {
  nlohmann::json j = {{"format", kFormat},
                      {"version", kVersion},
                      {"hamiltonian", format_hamiltonian(h_)},
                      {"train_config", config_to_json(cfg_)},
                      {"greedy_colors", greedy_colors_},
                      {"color_cap", mdp_.color_cap()},
                      {"iterations_done", iterations_done_},
                      {"network", net_},
                      {"adam", adam_},
                      {"rng_state", rng_.state()}};
  out << j.dump() << '\n';
  if (!out) throw Error("failed to write checkpoint");
}

void TrainedSampler::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  save(out);
}

TrainedSampler TrainedSampler::load(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("format").get<std::string>() != kFormat) throw Error("not a sampler checkpoint");
    if (j.at("version").get<int>() != kVersion) {
      throw Error("unsupported checkpoint version " + j.at("version").dump());
    }
    TrainedSampler s(parse_hamiltonian(j.at("hamiltonian").get<std::string>()),
                     config_from_json(j.at("train_config")), j.at("greedy_colors").get<int>());
    if (s.mdp_.color_cap() != j.at("color_cap").get<int>()) {
      throw Error("checkpoint color cap is inconsistent with its configuration");
    }
    nn::DenseNet net = nn::dense_net_from_json(j.at("network"));
    if (net.layer_sizes() != s.net_.layer_sizes()) {
      throw DimensionError("checkpoint network shape does not match the Hamiltonian");
    }
    s.net_ = std::move(net);
    j.at("adam").get_to(s.adam_);
    s.rng_.set_state(j.at("rng_state").get<std::string>());
    j.at("iterations_done").get_to(s.iterations_done_);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed checkpoint: ") + e.what());
  }
}

TrainedSampler TrainedSampler::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint " + path.string());
  return load(in);
}

}  // namespace pgroup
