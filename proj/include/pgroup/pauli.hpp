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
#include <string>
#include <string_view>
#include <vector>

namespace pgroup {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/**
 * Tensor product of single-qubit Paulis in symplectic form.
 *
 * Each qubit carries an (x, z) bit pair: (0,0) = I, (1,0) = X, (1,1) = Y,
 * (0,1) = Z. Bits are packed 64 per word, qubit q at bit q % 64 of word
 * q / 64. Phases are not tracked.
 */
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::size_t n_qubits);

  /// Dense form, one character per qubit: "XIZ" is X on qubit 0, Z on 2.
  static PauliWord from_dense(std::string_view text);

  /// Sparse form "X0 Z2"; "I" or an empty string is the identity.
  static PauliWord from_sparse(std::string_view text, std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }

  Pauli get(std::size_t qubit) const;
  void set(std::size_t qubit, Pauli p);

  bool is_identity() const noexcept;
  /// Number of non-identity factors.
  std::size_t weight() const noexcept;

  std::string to_dense() const;
  /// "X0 Z2" with ascending indices, or "I" for the identity.
  std::string to_sparse() const;

  const std::vector<std::uint64_t>& x_bits() const noexcept { return x_; }
  const std::vector<std::uint64_t>& z_bits() const noexcept { return z_; }

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

struct PauliWordHash {
  std::size_t operator()(const PauliWord& w) const noexcept;
};

/// [a, b] = 0, i.e. the symplectic inner product of a and b is even.
bool commutes_fc(const PauliWord& a, const PauliWord& b);

/// On every qubit the two factors are equal or at least one is identity.
bool commutes_qwc(const PauliWord& a, const PauliWord& b);

}  // namespace pgroup
