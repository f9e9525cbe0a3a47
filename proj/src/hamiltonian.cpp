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

#include "pgroup/hamiltonian.hpp"

#include <cmath>
#include <unordered_map>

#include "pgroup/error.hpp"

namespace pgroup {

QubitHamiltonian::QubitHamiltonian(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw InvalidArgument("a Hamiltonian needs at least one qubit");
}

QubitHamiltonian::QubitHamiltonian(std::size_t n_qubits, const std::vector<Term>& terms,
                                   double identity_offset, double prune_tolerance)
    : QubitHamiltonian(n_qubits) {
  identity_offset_ = identity_offset;
  std::unordered_map<PauliWord, std::size_t, PauliWordHash> slot;
  std::vector<Term> merged;
  for (const Term& t : terms) {
    if (t.word.n_qubits() != n_qubits) {
      throw DimensionError("term " + t.word.to_sparse() + " acts on " +
                           std::to_string(t.word.n_qubits()) + " qubits, expected " +
                           std::to_string(n_qubits));
    }
    if (t.word.is_identity()) {
      identity_offset_ += t.coefficient;
      continue;
    }
    auto [it, inserted] = slot.try_emplace(t.word, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coefficient += t.coefficient;
    }
  }
  for (Term& t : merged) {
    if (std::abs(t.coefficient) >= prune_tolerance) terms_.push_back(std::move(t));
  }
}

double one_norm(const QubitHamiltonian& h) {
  double total = 0.0;
  for (const Term& t : h.terms()) total += std::abs(t.coefficient);
  return total;
}

}  // namespace pgroup
