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

#include "odsim/dense_oracle.hpp"
#include "odsim/error.hpp"
#include "test_support.hpp"

namespace odsim {
namespace {

using testing::max_abs;

TEST(DenseOracle, UnitaryAndGroupProperty) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const PmrHamiltonian h = pauli_to_pmr(testing::random_paulis(rng, {.n_qubits = 1 + trial % 5}));
    const DenseOracle o(h);
    const double t1 = u(rng), t2 = u(rng);
    const Eigen::MatrixXcd a = o.propagator(t1), b = o.propagator(t2);
    const auto id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    EXPECT_LT(max_abs(a.adjoint() * a - id), 1e-11);
    EXPECT_LT(max_abs(a * b - o.propagator(t1 + t2)), 1e-10);
  }
}

TEST(DenseOracle, AgreesWithSeriesExponential) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const PmrHamiltonian h = pauli_to_pmr(testing::random_paulis(rng, {.n_qubits = 3}));
    const DenseOracle o(h);
    EXPECT_LT(max_abs(o.propagator(1.7) - testing::expm_series(dense_matrix(h), 1.7)), 1e-12);
    const Eigen::VectorXcd psi = testing::random_state(rng, 8);
    EXPECT_LT((o.apply(1.7, psi) - o.propagator(1.7) * psi).norm(), 1e-13);
  }
}

TEST(DenseOracle, EigenvaluesOfPauliX) {
  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  const DenseOracle o(x);
  EXPECT_NEAR(o.eigenvalues()(0), -1.0, 1e-15);
  EXPECT_NEAR(o.eigenvalues()(1), 1.0, 1e-15);
  EXPECT_EQ(o.dimension(), 2);
}

TEST(DenseOracle, UsesHermitianPart) {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 2, 0, -1;
  const DenseOracle o(m);
  Eigen::MatrixXcd herm(2, 2);
  herm << 1, 1, 1, -1;
  EXPECT_LT(max_abs(o.propagator(0.6) - testing::expm_series(herm, 0.6)), 1e-13);
}

TEST(DenseOracle, ThresholdEnforced) {
  const PmrHamiltonian h = pauli_to_pmr(std::vector<PauliString>{PauliString::from_word(1.0, "XIIII")});
  EXPECT_THROW(DenseOracle(h, 4), InvalidArgument);
}

}  // namespace
}  // namespace odsim
