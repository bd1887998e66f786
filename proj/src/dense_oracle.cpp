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

#include "odsim/dense_oracle.hpp"

#include <complex>

#include "odsim/error.hpp"

namespace odsim {

DenseOracle::DenseOracle(const Eigen::MatrixXcd &h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw InvalidArgument("dense Hamiltonian must be square");
  Eigen::MatrixXcd herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

DenseOracle::DenseOracle(const PmrHamiltonian &h, int dense_threshold)
    : DenseOracle(dense_matrix(h, dense_threshold)) {}

Eigen::MatrixXcd DenseOracle::propagator(double t) const {
  Eigen::VectorXcd phases(eigenvalues_.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, -t * eigenvalues_[k]);
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Eigen::VectorXcd DenseOracle::apply(double t, const Eigen::VectorXcd &state) const {
  if (state.size() != dimension()) throw InvalidArgument("state dimension mismatch");
  Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * state;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::polar(1.0, -t * eigenvalues_[k]);
  return eigenvectors_ * coeffs;
}

}  // namespace odsim
