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

#include "pgroup/hamiltonian_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "pgroup/error.hpp"

namespace pgroup {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_coefficient(std::string_view token, std::size_t line) {
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const char* last = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), last, value, std::chars_format::general);
  if (digits.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(line, "invalid coefficient '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_header(std::string_view body, std::size_t line) {
  constexpr std::string_view kKey = "qubits:";
  if (body.substr(0, kKey.size()) != kKey) {
    throw ParseError(line, "expected header 'qubits: <n>'");
  }
  const std::string_view rest = trim(body.substr(kKey.size()));
  std::size_t n = 0;
  const char* last = rest.data() + rest.size();
  auto [ptr, ec] = std::from_chars(rest.data(), last, n);
  if (rest.empty() || ec != std::errc() || ptr != last || n == 0) {
    throw ParseError(line, "qubit count must be a positive integer");
  }
  return n;
}

PauliWord parse_word(const std::vector<std::string_view>& factors, std::size_t n,
                     std::size_t line) {
  PauliWord word(n);
  if (factors.size() == 1 && factors[0] == "I") return word;
  std::vector<bool> seen(n, false);
  for (std::string_view f : factors) {
    if (f.size() < 2) throw FormatError(line, "malformed factor '" + std::string(f) + "'");
    Pauli p;
    switch (f[0]) {
      case 'X':
        p = Pauli::X;
        break;
      case 'Y':
        p = Pauli::Y;
        break;
      case 'Z':
        p = Pauli::Z;
        break;
      default:
        throw FormatError(line, "unknown Pauli in '" + std::string(f) + "'");
    }
    std::size_t q = 0;
    const char* last = f.data() + f.size();
    auto [ptr, ec] = std::from_chars(f.data() + 1, last, q);
    if (ec == std::errc::result_out_of_range) {
      throw RangeError(line, "qubit index in '" + std::string(f) + "' out of range");
    }
    if (ec != std::errc() || ptr != last) {
      throw FormatError(line, "malformed qubit index in '" + std::string(f) + "'");
    }
    if (q >= n) {
      throw RangeError(line, "qubit " + std::to_string(q) + " >= " + std::to_string(n));
    }
    if (seen[q]) throw FormatError(line, "qubit " + std::to_string(q) + " repeated");
    seen[q] = true;
    word.set(q, p);
  }
  return word;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

QubitHamiltonian load_hamiltonian(std::istream& in, double prune_tolerance) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t n_qubits = 0;
  std::vector<Term> terms;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view body = trim(raw);
    if (body.empty() || body.front() == '#') continue;
    if (n_qubits == 0) {
      n_qubits = parse_header(body, line_no);
      continue;
    }
    const auto tokens = split_ws(body);
    if (tokens.size() < 2) throw FormatError(line_no, "expected '<coefficient> <pauli-spec>'");
    const double c = parse_coefficient(tokens[0], line_no);
    const std::vector<std::string_view> factors(tokens.begin() + 1, tokens.end());
    terms.push_back(Term{c, parse_word(factors, n_qubits, line_no)});
  }
  if (in.bad()) throw Error("read failure on Hamiltonian stream");
  if (n_qubits == 0) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'qubits: <n>' header");
  return QubitHamiltonian(n_qubits, terms, 0.0, prune_tolerance);
}

QubitHamiltonian load_hamiltonian_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return load_hamiltonian(in);
}

QubitHamiltonian parse_hamiltonian(const std::string& text) {
  std::istringstream in(text);
  return load_hamiltonian(in);
}

void write_hamiltonian(const QubitHamiltonian& h, std::ostream& out) {
  out << "qubits: " << h.n_qubits() << '\n';
  if (h.identity_offset() != 0.0) out << format_double(h.identity_offset()) << " I\n";
  for (const Term& t : h.terms()) {
    out << format_double(t.coefficient) << ' ' << t.word.to_sparse() << '\n';
  }
  if (!out) throw Error("write failure on Hamiltonian stream");
}

std::string format_hamiltonian(const QubitHamiltonian& h) {
  std::ostringstream out;
  write_hamiltonian(h, out);
  return out.str();
}

}  // namespace pgroup
