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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "odsim/pmr.hpp"

namespace odsim {

/// Reads `<coefficient> <word>` lines. Blank lines and lines whose first
/// non-space character is `#` are skipped. Throws ParseError.
std::vector<PauliString> parse_pauli_text(std::istream &in);
std::vector<PauliString> parse_pauli_text(const std::string &text);
std::vector<PauliString> read_pauli_file(const std::string &path);

/// Inverse of parse_pauli_text; coefficients are written with 17 significant
/// digits so a round trip is exact.
void write_pauli_text(std::ostream &out, const std::vector<PauliString> &strings,
                      const std::string &header_comment = "");

/// Pauli-string expansion of a PMR Hamiltonian. Requires real D0 and a
/// Hermitian off-diagonal part; the output reproduces dense_matrix(h).
std::vector<PauliString> pmr_to_pauli(const PmrHamiltonian &h);

}  // namespace odsim
