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

#include "pgroup/pauli.hpp"

#include <bit>
#include <charconv>

#include "pgroup/error.hpp"

namespace pgroup {

namespace {

constexpr std::size_t kBits = 64;

std::size_t word_count(std::size_t n_qubits) {
  return (n_qubits + kBits - 1) / kBits;
}

void require_same_size(const PauliWord& a, const PauliWord& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("Pauli words act on " + std::to_string(a.n_qubits()) +
                         " and " + std::to_string(b.n_qubits()) + " qubits");
  }
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw InvalidArgument(std::string("not a Pauli letter: '") + c + "'");
  }
}

}  // namespace

char to_char(Pauli p) {
  constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[static_cast<std::uint8_t>(p)];
}

PauliWord::PauliWord(std::size_t n_qubits)
    : n_qubits_(n_qubits),
      x_(word_count(n_qubits), 0),
      z_(word_count(n_qubits), 0) {}

PauliWord PauliWord::from_dense(std::string_view text) {
  PauliWord w(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) w.set(q, pauli_from_char(text[q]));
  return w;
}

PauliWord PauliWord::from_sparse(std::string_view text, std::size_t n_qubits) {
  PauliWord w(n_qubits);
  std::vector<bool> seen(n_qubits, false);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "I") continue;
    if (token.size() < 2) {
      throw InvalidArgument("malformed Pauli factor '" + std::string(token) + "'");
    }
    const Pauli p = pauli_from_char(token[0]);
    std::size_t qubit = 0;
    const char* first = token.data() + 1;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, qubit);
    if (ec != std::errc() || ptr != last) {
      throw InvalidArgument("malformed qubit index in '" + std::string(token) + "'");
    }
    if (qubit >= n_qubits) {
      throw DimensionError("qubit " + std::to_string(qubit) + " out of range for " +
                           std::to_string(n_qubits) + " qubits");
    }
    if (seen[qubit]) {
      throw InvalidArgument("qubit " + std::to_string(qubit) + " repeated");
    }
    seen[qubit] = true;
    w.set(qubit, p);
  }
  return w;
}

Pauli PauliWord::get(std::size_t qubit) const {
  if (qubit >= n_qubits_) throw DimensionError("qubit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (qubit % kBits);
  const bool x = (x_[qubit / kBits] & mask) != 0;
  const bool z = (z_[qubit / kBits] & mask) != 0;
  if (x) return z ? Pauli::Y : Pauli::X;
  return z ? Pauli::Z : Pauli::I;
}

void PauliWord::set(std::size_t qubit, Pauli p) {
  if (qubit >= n_qubits_) throw DimensionError("qubit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (qubit % kBits);
  const bool x = p == Pauli::X || p == Pauli::Y;
  const bool z = p == Pauli::Z || p == Pauli::Y;
  auto& xw = x_[qubit / kBits];
  auto& zw = z_[qubit / kBits];
  xw = x ? (xw | mask) : (xw & ~mask);
  zw = z ? (zw | mask) : (zw & ~mask);
}

bool PauliWord::is_identity() const noexcept {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (x_[i] != 0 || z_[i] != 0) return false;
  }
  return true;
}

std::size_t PauliWord::weight() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) count += std::popcount(x_[i] | z_[i]);
  return count;
}

std::string PauliWord::to_dense() const {
  std::string out(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) out[q] = to_char(get(q));
  return out;
}

std::string PauliWord::to_sparse() const {
  std::string out;
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    const Pauli p = get(q);
    if (p == Pauli::I) continue;
    if (!out.empty()) out += ' ';
    out += to_char(p);
    out += std::to_string(q);
  }
  return out.empty() ? std::string("I") : out;
}

std::size_t PauliWordHash::operator()(const PauliWord& w) const noexcept {
  std::size_t seed = w.n_qubits();
  auto combine = [&seed](std::uint64_t v) {
    seed ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  };
  for (auto v : w.x_bits()) combine(v);
  for (auto v : w.z_bits()) combine(v);
  return seed;
}

bool commutes_fc(const PauliWord& a, const PauliWord& b) {
  require_same_size(a, b);
  const auto& ax = a.x_bits();
  const auto& az = a.z_bits();
  const auto& bx = b.x_bits();
  const auto& bz = b.z_bits();
  std::uint64_t parity = 0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    parity ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
  }
  return std::popcount(parity) % 2 == 0;
}

bool commutes_qwc(const PauliWord& a, const PauliWord& b) {
  require_same_size(a, b);
  const auto& ax = a.x_bits();
  const auto& az = a.z_bits();
  const auto& bx = b.x_bits();
  const auto& bz = b.z_bits();
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const std::uint64_t both = (ax[i] | az[i]) & (bx[i] | bz[i]);
    const std::uint64_t differ = (ax[i] ^ bx[i]) | (az[i] ^ bz[i]);
    if (both & differ) return false;
  }
  return true;
}

}  // namespace pgroup
