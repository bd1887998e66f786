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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "odsim/error.hpp"
#include "odsim/hamiltonian_io.hpp"
#include "test_support.hpp"

namespace odsim {
namespace {

TEST(ParsePauliText, CommentsAndBlankLines) {
  const auto ps = parse_pauli_text("# header\n\n 0.5 ZIXZ\n-1e-2 YYII  # trailing\n");
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].coefficient, 0.5);
  EXPECT_EQ(ps[0].word(), "ZIXZ");
  EXPECT_EQ(ps[1].coefficient, -1e-2);
  EXPECT_EQ(ps[1].word(), "YYII");
}

TEST(ParsePauliText, ReportsLineNumbers) {
  try {
    parse_pauli_text("0.5 ZZ\n# ok\nabc XX\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_pauli_text("0.5 ZZ\n0.1 XQ\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_pauli_text("0.5\n"), ParseError);
  EXPECT_THROW(parse_pauli_text("0.5 ZZ extra\n"), ParseError);
  EXPECT_THROW(parse_pauli_text("nan ZZ\n"), ParseError);
}

TEST(ParsePauliText, EmptyAndMixedLengthsRejected) {
  EXPECT_THROW(parse_pauli_text("# nothing\n"), ParseError);
  EXPECT_THROW(parse_pauli_text("1 ZZ\n1 ZZZ\n"), ParseError);
}

TEST(ReadPauliFile, MissingFileIsInvalid) { EXPECT_THROW(read_pauli_file("/nonexistent/h.txt"), InvalidArgument); }

TEST(WritePauliText, RoundTripIsExact) {
  std::mt19937_64 rng(2);
  const auto ps = testing::random_paulis(rng, {.n_qubits = 5});
  std::ostringstream out;
  write_pauli_text(out, ps, "sample");
  const auto back = parse_pauli_text(out.str());
  ASSERT_EQ(back.size(), ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(back[i].coefficient, ps[i].coefficient);
    EXPECT_EQ(back[i].word(), ps[i].word());
  }
  EXPECT_EQ(out.str().rfind("# sample", 0), 0u);
}

TEST(PmrToPauli, ReproducesDenseMatrix) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    const auto ps = testing::random_paulis(rng, {});
    const PmrHamiltonian h = pauli_to_pmr(ps);
    const auto back = pmr_to_pauli(h);
    EXPECT_LT(testing::max_abs(testing::pauli_sum_dense(back) - dense_matrix(h)), 1e-12);
  }
}

TEST(PmrToPauli, RejectsNonHermitianTerm) {
  DiagonalOperator d(1);
  d.add(cplx(0, 1), 0);
  const PmrHamiltonian h(1, DiagonalOperator(1), {{d, PermutationOperator(1)}});
  EXPECT_THROW(pmr_to_pauli(h), InvalidArgument);
}

}  // namespace
}  // namespace odsim
