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
#include <vector>

#include "pgroup/pauli.hpp"

namespace pgroup {

inline constexpr double kDefaultPruneTolerance = 1e-12;

struct Term {
  double coefficient = 0.0;
  PauliWord word;

  friend bool operator==(const Term&, const Term&) = default;
};

/**
 * Weighted sum of Pauli words plus an identity offset, in Hartree.
 *
 * Always canonical: every word acts on n_qubits, the all-identity word is
 * folded into identity_offset, duplicate words are merged by adding
 * coefficients (first-appearance order kept), and terms whose merged
 * |coefficient| is below the prune tolerance are dropped.
 */
class QubitHamiltonian {
 public:
  explicit QubitHamiltonian(std::size_t n_qubits = 1);
  QubitHamiltonian(std::size_t n_qubits, const std::vector<Term>& terms,
                   double identity_offset = 0.0,
                   double prune_tolerance = kDefaultPruneTolerance);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& term(std::size_t i) const { return terms_.at(i); }
  double identity_offset() const noexcept { return identity_offset_; }

  friend bool operator==(const QubitHamiltonian&, const QubitHamiltonian&) = default;

 private:
  std::size_t n_qubits_;
  std::vector<Term> terms_;
  double identity_offset_ = 0.0;
};

/// Sum of |c_k| over the non-identity terms.
double one_norm(const QubitHamiltonian& h);

}  // namespace pgroup
