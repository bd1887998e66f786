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

#include <cmath>
#include <random>

#include "odsim/error.hpp"
#include "odsim/pmr.hpp"
#include "test_support.hpp"

namespace odsim {
namespace {

using testing::max_abs;
using testing::pauli_sum_dense;

TEST(PauliString, WordRoundTrip) {
  const PauliString p = PauliString::from_word(0.5, "ZIXY");
  EXPECT_EQ(p.n_qubits, 4);
  EXPECT_EQ(p.z_mask, Mask{0b0001});
  EXPECT_EQ(p.x_mask, Mask{0b0100});
  EXPECT_EQ(p.y_mask, Mask{0b1000});
  EXPECT_EQ(p.word(), "ZIXY");
  EXPECT_THROW(PauliString::from_word(1.0, "ZQ"), InvalidArgument);
}

TEST(PauliString, OverlappingMasksRejected) {
  PauliString p;
  p.n_qubits = 2;
  p.z_mask = 1;
  p.x_mask = 1;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p.x_mask = 4;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(DiagonalOperator, EvaluatesSignedSum) {
  DiagonalOperator d(2);
  d.add(2.0, 0);
  d.add(0.5, 0b01);
  d.add(-1.0, 0b11);
  EXPECT_DOUBLE_EQ(d(0b00).real(), 2.0 + 0.5 - 1.0);
  EXPECT_DOUBLE_EQ(d(0b01).real(), 2.0 - 0.5 + 1.0);
  EXPECT_DOUBLE_EQ(d(0b11).real(), 2.0 - 0.5 - 1.0);
}

TEST(DiagonalOperator, ProductMultipliesPointwise) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  DiagonalOperator a(3), b(3);
  for (Mask m = 0; m < 8; ++m) {
    a.add(u(rng), m);
    if (m % 3 == 0) b.add(cplx(u(rng), u(rng)), m);
  }
  const DiagonalOperator c = a * b;
  for (BasisState z = 0; z < 8; ++z) EXPECT_LT(std::abs(c(z) - a(z) * b(z)), 1e-14);
}

TEST(PermutationOperator, RejectsZeroMask) { EXPECT_THROW(PermutationOperator(0), InvalidArgument); }

TEST(PauliToPmr, DiagonalOnlyGivesNoTerms) {
  std::vector<PauliString> ps = {PauliString::from_word(0.7, "ZZI"), PauliString::from_word(-0.2, "IZZ")};
  const PmrHamiltonian h = pauli_to_pmr(ps);
  EXPECT_EQ(h.num_terms(), 0u);
  EXPECT_EQ(h.d0().terms().size(), 2u);
}

TEST(PauliToPmr, ZzPlusZxGroupsByFlippedQubit) {
  const int n = 3;
  std::vector<PauliString> ps;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::string zz(n, 'I'), zx(n, 'I');
      zz[i] = zz[j] = 'Z';
      zx[i] = 'Z';
      zx[j] = 'X';
      ps.push_back(PauliString::from_word(0.1 * (i + 1) + j, zz));
      ps.push_back(PauliString::from_word(0.3 * (j + 1) - i, zx));
    }
  }
  const PmrHamiltonian h = pauli_to_pmr(ps);
  ASSERT_EQ(h.num_terms(), static_cast<std::size_t>(n));
  for (const auto &t : h.terms()) {
    EXPECT_EQ(std::popcount(t.p.x_mask()), 1);
    EXPECT_EQ(t.d.terms().size(), static_cast<std::size_t>(n - 1));
    for (const auto &dt : t.d.terms()) EXPECT_EQ(std::popcount(dt.z_mask), 1);
  }
  EXPECT_LT(max_abs(dense_matrix(h) - pauli_sum_dense(ps)), 1e-13);
}

TEST(PauliToPmr, SingleXYString) {
  std::vector<PauliString> ps = {PauliString::from_word(0.5, "XY")};
  const PmrHamiltonian h = pauli_to_pmr(ps);
  ASSERT_EQ(h.num_terms(), 1u);
  EXPECT_EQ(h.terms()[0].p.x_mask(), Mask{0b11});
  const auto &dt = h.terms()[0].d.terms();
  ASSERT_EQ(dt.size(), 1u);
  EXPECT_EQ(dt[0].z_mask, Mask{0b10});
  EXPECT_LT(std::abs(dt[0].coefficient - cplx(0, -0.5)), 1e-15);
  EXPECT_LT(max_abs(dense_matrix(h) - pauli_sum_dense(ps)), 1e-15);
}

TEST(PauliToPmr, RejectsEmptyAndMixedSizes) {
  std::vector<PauliString> none;
  EXPECT_THROW(pauli_to_pmr(none), InvalidArgument);
  std::vector<PauliString> mixed = {PauliString::from_word(1, "XI"), PauliString::from_word(1, "XII")};
  EXPECT_THROW(pauli_to_pmr(mixed), InvalidArgument);
}

TEST(PauliToPmr, CancellingStringsArePruned) {
  std::vector<PauliString> ps = {PauliString::from_word(0.5, "XZ"), PauliString::from_word(-0.5, "XZ"),
                                 PauliString::from_word(1.0, "ZI")};
  EXPECT_EQ(pauli_to_pmr(ps).num_terms(), 0u);
}

TEST(PauliToPmr, RandomRoundTripMatchesKroneckerBuild) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ps = testing::random_paulis(rng, {});
    const PmrHamiltonian h = pauli_to_pmr(ps);
    std::set<Mask> flips;
    for (const auto &p : ps) {
      if (p.flip_mask()) flips.insert(p.flip_mask());
    }
    EXPECT_LE(h.num_terms(), flips.size());
    const auto dense = dense_matrix(h);
    EXPECT_LT(max_abs(dense - pauli_sum_dense(ps)), 1e-12);
    EXPECT_LT(max_abs(dense - dense.adjoint()), 1e-12);
    EXPECT_LT(hermiticity_violation(h), 1e-12);
  }
}

TEST(DiagonalEnergy, PauliEigenvalues) {
  const PmrHamiltonian zero = pauli_to_pmr(std::vector<PauliString>{PauliString::from_word(0.0, "XI")});
  EXPECT_EQ(diagonal_energy(zero, 3), 0.0);
  const PmrHamiltonian z = pauli_to_pmr(std::vector<PauliString>{PauliString::from_word(1.0, "Z")});
  EXPECT_EQ(diagonal_energy(z, 0), 1.0);
  EXPECT_EQ(diagonal_energy(z, 1), -1.0);
}

TEST(HoppingStrength, ConstantAndZStringSign) {
  const PmrHamiltonian c = pauli_to_pmr(std::vector<PauliString>{PauliString::from_word(0.75, "XX")});
  for (BasisState s = 0; s < 4; ++s) EXPECT_EQ(hopping_strength(c, 0, s), cplx(0.75));
  // -(1/2) Z_1 X_0 X_2 evaluated where bit 1 is set: Z_1 = -1.
  const PmrHamiltonian h = pauli_to_pmr(std::vector<PauliString>{PauliString::from_word(-0.5, "XZX")});
  EXPECT_EQ(hopping_strength(h, 0, 0b010), cplx(0.5));
  EXPECT_EQ(hopping_strength(h, 0, 0b000), cplx(-0.5));
}

TEST(GammaBounds, ExactIsBruteForceMaximumAndBelowSumAbs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ps = testing::random_paulis(rng, {.n_qubits = 6, .max_masks = 5, .strings_per_mask = 3});
    const PmrHamiltonian h = pauli_to_pmr(ps);
    const GammaBounds ex = gamma_bounds(h, GammaMode::exact);
    const GammaBounds sa = gamma_bounds(h, GammaMode::sum_abs);
    double total = 0.0;
    for (std::size_t i = 0; i < h.num_terms(); ++i) {
      double brute = 0.0;
      for (BasisState z = 0; z < h.dimension(); ++z) brute = std::max(brute, std::abs(hopping_strength(h, i, z)));
      EXPECT_NEAR(ex.gamma[i], brute, 1e-14);
      EXPECT_LE(ex.gamma[i], sa.gamma[i] + 1e-14);
      total += ex.gamma[i];
    }
    EXPECT_NEAR(ex.gamma_total, total, 1e-13);
  }
}

TEST(GammaBounds, ZeroTermGivesZero) {
  std::vector<PmrTerm> terms = {{DiagonalOperator(2), PermutationOperator(1)}};
  const PmrHamiltonian h(2, DiagonalOperator(2), terms);
  EXPECT_EQ(gamma_bounds(h, GammaMode::exact).gamma[0], 0.0);
  EXPECT_EQ(gamma_bounds(h, GammaMode::sum_abs).gamma[0], 0.0);
}

TEST(DenseMatrix, DiagonalAndPauliX) {
  const PmrHamiltonian d = pauli_to_pmr(std::vector<PauliString>{PauliString::from_word(0.3, "ZI"),
                                                                  PauliString::from_word(0.2, "IZ")});
  const auto md = dense_matrix(d);
  for (Eigen::Index z = 0; z < 4; ++z) EXPECT_DOUBLE_EQ(md(z, z).real(), diagonal_energy(d, z));
  EXPECT_EQ(max_abs(md - Eigen::MatrixXcd(md.diagonal().asDiagonal())), 0.0);

  const auto mx = dense_matrix(pauli_to_pmr(std::vector<PauliString>{PauliString::from_word(1.0, "X")}));
  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_EQ(max_abs(mx - x), 0.0);
}

TEST(AlternativeRepresentation, PurePhaseTermKeepsBothPhasesEqual) {
  // D = 0.8 Z_1 on a flip of qubit 0: |d| = Gamma everywhere, so theta = 0.
  const PmrHamiltonian h = pauli_to_pmr(std::vector<PauliString>{PauliString::from_word(0.8, "XZ")});
  const GammaBounds g = gamma_bounds(h, GammaMode::exact);
  const auto split = alternative_representation(h, g);
  ASSERT_EQ(split.terms.size(), 2u);
  for (BasisState z = 0; z < 4; ++z) {
    EXPECT_LT(std::abs(split.terms[0].phases[z] - split.terms[1].phases[z]), 1e-15);
    EXPECT_LT(std::abs(split.terms[0].phases[z] - hopping_strength(h, 0, z) / 0.8), 1e-15);
  }
}

TEST(AlternativeRepresentation, ZeroEntryGivesOppositeQuarterTurns) {
  // d(z) = 0.5 (1 + Z_1): zero where bit 1 is set.
  const PmrHamiltonian h = pauli_to_pmr(
      std::vector<PauliString>{PauliString::from_word(0.5, "XI"), PauliString::from_word(0.5, "XZ")});
  const GammaBounds g = gamma_bounds(h, GammaMode::exact);
  const auto split = alternative_representation(h, g);
  const cplx a = split.terms[0].phases[0b10], b = split.terms[1].phases[0b10];
  EXPECT_NEAR(std::abs(std::arg(a) - std::arg(b)), std::numbers::pi, 1e-14);
  EXPECT_LT(std::abs(a + b), 1e-15);
}

TEST(AlternativeRepresentation, RandomReconstruction) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ps = testing::random_paulis(rng, {.n_qubits = 4, .max_masks = 4, .strings_per_mask = 3});
    const PmrHamiltonian h = pauli_to_pmr(ps);
    const auto split = alternative_representation(h, gamma_bounds(h, GammaMode::exact));
    EXPECT_LT(max_abs(split.dense() - dense_matrix(h)), 1e-12);
  }
}

TEST(PmrHamiltonian, RejectsDuplicateMasks) {
  DiagonalOperator one = DiagonalOperator::identity(2);
  std::vector<PmrTerm> terms = {{one, PermutationOperator(1)}, {one, PermutationOperator(1)}};
  EXPECT_THROW(PmrHamiltonian(2, DiagonalOperator(2), terms), InvalidArgument);
}

}  // namespace
}  // namespace odsim
