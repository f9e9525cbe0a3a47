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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pgroup/hamiltonian.hpp"

namespace pgroup {

// Text format, UTF-8, LF or CRLF line endings:
//
//   # comment
//   qubits: 4
//   -0.0537 I
//   0.1812 Z0
//   0.0449 X0 X1 Y2 Y3
//
// The header must be the first non-blank, non-comment line. A term line is a
// decimal coefficient followed by either sparse factors "<P><q>" or "I".

QubitHamiltonian load_hamiltonian(std::istream& in,
                                  double prune_tolerance = kDefaultPruneTolerance);
QubitHamiltonian load_hamiltonian_file(const std::filesystem::path& path);
QubitHamiltonian parse_hamiltonian(const std::string& text);

/// Emits the header, the identity offset line when non-zero, then one line
/// per term. Coefficients use the shortest round-trip decimal form.
void write_hamiltonian(const QubitHamiltonian& h, std::ostream& out);
std::string format_hamiltonian(const QubitHamiltonian& h);

}  // namespace pgroup
