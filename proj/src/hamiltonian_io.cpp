// Copyright 2026 The odsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "odsim/hamiltonian_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "odsim/error.hpp"

namespace odsim {

std::vector<PauliString> parse_pauli_text(std::istream &in) {
  std::vector<PauliString> out;
  std::string line;
  int line_no = 0;
  int n_qubits = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    double coefficient = 0.0;
    std::size_t used = 0;
    try {
      coefficient = std::stod(first, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != first.size() || !std::isfinite(coefficient)) {
      throw ParseError(line_no, "expected a real coefficient, got '" + first + "'");
    }
    std::string word;
    if (!(ls >> word)) throw ParseError(line_no, "missing Pauli word");
    std::string extra;
    if (ls >> extra && extra[0] != '#') throw ParseError(line_no, "unexpected token '" + extra + "'");
    PauliString p;
    try {
      p = PauliString::from_word(coefficient, word);
    } catch (const InvalidArgument &e) {
      throw ParseError(line_no, e.what());
    }
    if (n_qubits == 0) {
      n_qubits = p.n_qubits;
    } else if (p.n_qubits != n_qubits) {
      throw ParseError(line_no, "word length " + std::to_string(p.n_qubits) + " differs from " +
                                    std::to_string(n_qubits));
    }
    out.push_back(p);
  }
  if (out.empty()) throw ParseError(line_no, "no Hamiltonian terms found");
  return out;
}

std::vector<PauliString> parse_pauli_text(const std::string &text) {
  std::istringstream in(text);
  return parse_pauli_text(in);
}

std::vector<PauliString> read_pauli_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open Hamiltonian file '" + path + "'");
  return parse_pauli_text(in);
}

void write_pauli_text(std::ostream &out, const std::vector<PauliString> &strings,
                      const std::string &header_comment) {
  if (!header_comment.empty()) {
    std::istringstream hs(header_comment);
    std::string line;
    while (std::getline(hs, line)) out << "# " << line << '\n';
  }
  char buf[40];
  for (const auto &s : strings) {
    std::snprintf(buf, sizeof buf, "%.17g", s.coefficient);
    out << buf << ' ' << s.word() << '\n';
  }
}

std::vector<PauliString> pmr_to_pauli(const PmrHamiltonian &h) {
  const int n = h.n_qubits();
  std::vector<PauliString> out;
  auto emit = [&](double c, Mask z, Mask x, Mask y) {
    if (c == 0.0) return;
    PauliString p;
    p.coefficient = c;
    p.z_mask = z;
    p.x_mask = x;
    p.y_mask = y;
    p.n_qubits = n;
    out.push_back(p);
  };
  for (const auto &t : h.d0().terms()) emit(t.coefficient.real(), t.z_mask, 0, 0);
  const double scale = std::max(1.0, h.d0().max_abs_coefficient());
  static constexpr cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto &term : h.terms()) {
    const Mask p = term.p.x_mask();
    for (const auto &t : term.d.terms()) {
      // Z_m X_p = i^{|m & p|} (Y on m&p, Z on m\p, X on p\m).
      const Mask both = t.z_mask & p;
      const cplx c = t.coefficient * kPhase[__builtin_popcountll(both) & 3];
      if (std::abs(c.imag()) > 1e-12 * std::max(scale, std::abs(c))) {
        throw InvalidArgument("PMR term is not Hermitian; no real Pauli expansion exists");
      }
      emit(c.real(), t.z_mask & ~p, p & ~t.z_mask, both);
    }
  }
  return out;
}

}  // namespace odsim
