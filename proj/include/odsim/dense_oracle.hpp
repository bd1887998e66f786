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

#include <Eigen/Dense>

#include "odsim/pmr.hpp"

namespace odsim {

/// exp(-i H t) through the Hermitian eigendecomposition of a dense H.
class DenseOracle {
 public:
  /// Uses the Hermitian part (H + H^dagger) / 2.
  explicit DenseOracle(const Eigen::MatrixXcd &h);
  explicit DenseOracle(const PmrHamiltonian &h, int dense_threshold = kDefaultDenseThreshold);

  Eigen::Index dimension() const { return eigenvalues_.size(); }
  const Eigen::VectorXd &eigenvalues() const { return eigenvalues_; }

  Eigen::MatrixXcd propagator(double t) const;
  Eigen::VectorXcd apply(double t, const Eigen::VectorXcd &state) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

}  // namespace odsim
