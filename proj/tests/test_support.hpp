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

// Oracles and generators shared by the unit and acceptance tests. The
// oracles are written from the definitions and do not call the routines they
// check; the trajectory helpers drive the MDP on purpose.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pgroup/gflownet.hpp"
#include "pgroup/graph.hpp"
#include "pgroup/hamiltonian.hpp"
#include "pgroup/pauli.hpp"
#include "pgroup/rng.hpp"

namespace pgroup::testing {

inline std::string data_path(const std::string& name) {
  return std::string(PGROUP_DATA_DIR) + "/" + name;
}

inline const char* kH2Fixture = "h2_sto3g_1A_jw.ham";
inline const char* kH4Fixture = "h4_sto3g_1A_jw.ham";
inline const char* kSynthetic10 = "synthetic_10term.ham";

using CMatrix = Eigen::MatrixXcd;

inline CMatrix single_qubit_matrix(Pauli p) {
  using C = std::complex<double>;
  CMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, C(0, -1), C(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Dense 2^n x 2^n matrix of a word given as one factor per qubit.
inline CMatrix dense_matrix(const std::vector<Pauli>& factors) {
  CMatrix m = CMatrix::Identity(1, 1);
  for (Pauli p : factors) m = kron(m, single_qubit_matrix(p));
  return m;
}

/// All 4^n words on n qubits as factor lists, qubit 0 first.
inline std::vector<std::vector<Pauli>> all_factor_lists(std::size_t n) {
  std::vector<std::vector<Pauli>> out{{}};
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<std::vector<Pauli>> next;
    for (const auto& prefix : out) {
      for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
        auto w = prefix;
        w.push_back(p);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline bool dense_commute(const std::vector<Pauli>& a, const std::vector<Pauli>& b) {
  const CMatrix ma = dense_matrix(a);
  const CMatrix mb = dense_matrix(b);
  return (ma * mb - mb * ma).norm() < 1e-12;
}

inline bool dense_qubitwise_commute(const std::vector<Pauli>& a, const std::vector<Pauli>& b) {
  for (std::size_t q = 0; q < a.size(); ++q) {
    const CMatrix ma = single_qubit_matrix(a[q]);
    const CMatrix mb = single_qubit_matrix(b[q]);
    if ((ma * mb - mb * ma).norm() >= 1e-12) return false;
  }
  return true;
}

inline PauliWord random_word(std::size_t n_qubits, Rng& rng) {
  PauliWord w(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) w.set(q, static_cast<Pauli>(rng.below(4)));
  return w;
}

/// Canonical Hamiltonian with exactly `n_terms` distinct non-identity words
/// and coefficients uniform in +-[0.01, 1).
inline QubitHamiltonian random_hamiltonian(std::size_t n_qubits, std::size_t n_terms, Rng& rng) {
  std::vector<Term> terms;
  std::vector<PauliWord> seen;
  while (terms.size() < n_terms) {
    PauliWord w = random_word(n_qubits, rng);
    if (w.is_identity()) continue;
    bool dup = false;
    for (const PauliWord& s : seen) dup = dup || s == w;
    if (dup) continue;
    seen.push_back(w);
    const double mag = 0.01 + 0.99 * rng.uniform01();
    terms.push_back({rng.below(2) ? mag : -mag, w});
  }
  return QubitHamiltonian(n_qubits, terms);
}

inline CompatGraph random_graph(std::size_t n, double density, Rng& rng) {
  CompatGraph g(n, CommutationMode::FC);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform01() < density) g.add_edge(i, j);
    }
  }
  return g;
}

/// Plain properness check over all vertex pairs.
inline bool is_proper(const CompatGraph& g, const std::vector<int>& colors) {
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] < 1) return false;
    for (std::size_t j = i + 1; j < colors.size(); ++j) {
      if (colors[i] == colors[j] && g.has_edge(i, j)) return false;
    }
  }
  return true;
}

/// Visits every proper coloring in restricted-growth form (vertex 0 gets
/// color 1, each later vertex at most one above the running maximum) using
/// at most `cap` colors. These are exactly the partitions into independent
/// sets with at most `cap` blocks, each visited once.
inline void for_each_partition(const CompatGraph& g, int cap,
                               const std::function<void(const std::vector<int>&)>& visit) {
  const std::size_t n = g.n_vertices();
  std::vector<int> colors(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t v, int used) {
    if (v == n) {
      visit(colors);
      return;
    }
    for (int c = 1; c <= std::min(used + 1, cap); ++c) {
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) ok = !(colors[u] == c && g.has_edge(u, v));
      if (!ok) continue;
      colors[v] = c;
      rec(v + 1, std::max(used, c));
      colors[v] = 0;
    }
  };
  rec(0, 0);
}

/// Chromatic number by exhaustive restricted-growth enumeration.
inline int brute_force_chromatic(const CompatGraph& g) {
  const int n = static_cast<int>(g.n_vertices());
  for (int k = 1; k <= n; ++k) {
    bool found = false;
    for_each_partition(g, k, [&](const std::vector<int>&) { found = true; });
    if (found) return k;
  }
  return n;
}

/// M_est straight from the formula over coefficient groups.
inline double m_est_oracle(const QubitHamiltonian& h, const std::vector<int>& colors,
                           double epsilon) {
  int k = 0;
  for (int c : colors) k = std::max(k, c);
  std::vector<double> sq(static_cast<std::size_t>(k), 0.0);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const double c = h.term(i).coefficient;
    sq[static_cast<std::size_t>(colors[i] - 1)] += c * c;
  }
  double s = 0.0;
  for (double v : sq) s += std::sqrt(v);
  return s * s / (epsilon * epsilon);
}

inline double reward_oracle(const QubitHamiltonian& h, const std::vector<int>& colors,
                            double epsilon, double lambda0) {
  int k = 0;
  for (int c : colors) k = std::max(k, c);
  return static_cast<double>(static_cast<int>(h.size()) - k) +
         lambda0 / m_est_oracle(h, colors, epsilon);
}

/// Relabels colors by first appearance in vertex-index order.
inline std::vector<int> relabel(const std::vector<int>& colors) {
  std::vector<int> map(colors.size() + 1, 0);
  std::vector<int> out(colors.size());
  int next = 0;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    int& m = map[static_cast<std::size_t>(colors[i])];
    if (m == 0) m = ++next;
    out[i] = m;
  }
  return out;
}

/// Relabels colors by first appearance along `order`.
inline std::vector<int> relabel_along(const std::vector<int>& colors,
                                      const std::vector<std::size_t>& order) {
  std::vector<int> map(colors.size() + 1, 0);
  std::vector<int> out(colors.size());
  int next = 0;
  for (std::size_t v : order) {
    int& m = map[static_cast<std::size_t>(colors[v])];
    if (m == 0) m = ++next;
    out[v] = m;
  }
  return out;
}

/// The unique trajectory that ends in the partition `colors`, built by
/// replaying the MDP. Fails (returns false) if some step is masked.
inline bool replay_trajectory(const ColoringMdp& mdp, const std::vector<int>& colors,
                              const QubitHamiltonian& h, const MeasurementConfig& cfg,
                              Trajectory& out) {
  const std::vector<int> labels = relabel_along(colors, mdp.order());
  out = Trajectory{};
  ColoringState s = mdp.initial_state();
  out.states.push_back(s);
  while (!mdp.is_terminal(s)) {
    const ActionMask mask = mdp.legal_actions(s);
    const int a = labels[mdp.next_vertex(s)];
    if (!mask.allows(a)) return false;
    out.masks.push_back(mask);
    out.actions.push_back(a);
    s = mdp.apply(s, a);
    out.states.push_back(s);
  }
  out.coloring = Coloring(s.colors);
  out.m_est = m_est_oracle(h, s.colors, cfg.epsilon);
  out.reward = reward_oracle(h, s.colors, cfg.epsilon, cfg.lambda0);
  return true;
}

/// Probability the forward policy assigns to a replayed trajectory.
inline double trajectory_probability(const nn::DenseNet& net, const ColoringMdp& mdp,
                                     const Trajectory& t) {
  double p = 1.0;
  for (std::size_t k = 0; k < t.actions.size(); ++k) {
    p *= forward_policy(net, mdp, t.states[k])[static_cast<std::size_t>(t.actions[k] - 1)];
  }
  return p;
}

/// Target distribution R(x)/Z over partitions with at most `cap` blocks,
/// keyed by index-order canonical labels.
inline std::map<std::vector<int>, double> reward_distribution(const QubitHamiltonian& h,
                                                              const CompatGraph& g, int cap,
                                                              const MeasurementConfig& cfg) {
  std::map<std::vector<int>, double> p;
  double z = 0.0;
  for_each_partition(g, cap, [&](const std::vector<int>& c) {
    const double r = reward_oracle(h, c, cfg.epsilon, cfg.lambda0);
    p[c] = r;
    z += r;
  });
  for (auto& [key, value] : p) value /= z;
  return p;
}

inline double total_variation(const std::map<std::vector<int>, double>& target,
                              const std::map<std::vector<int>, double>& empirical) {
  double tv = 0.0;
  for (const auto& [key, value] : target) {
    const auto it = empirical.find(key);
    tv += std::abs(value - (it == empirical.end() ? 0.0 : it->second));
  }
  for (const auto& [key, value] : empirical) {
    if (!target.contains(key)) tv += value;
  }
  return 0.5 * tv;
}

}  // namespace pgroup::testing
