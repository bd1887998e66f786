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

#include <cmath>
#include <span>
#include <vector>

#include "odsim/divdiff.hpp"
#include "odsim/offdiag_series.hpp"
#include "odsim/pmr.hpp"

namespace odsim {

/// Depth-first enumeration of the paths of length <= Q leaving a basis
/// state, term indices ascending at every level. Subtrees whose hopping
/// product vanishes are skipped.
///
/// With the Taylor method and a moderate diagonal spread the divided
/// differences of all prefixes share one power-series table about a fixed
/// energy center, extended by one row per level.
class PathKernel {
 public:
  PathKernel(const PmrHamiltonian &h, const GammaBounds &g, const SegmentPlan &plan,
             const DdConfig &dd)
      : h_(h), g_(g), plan_(plan), dd_(dd), idx_(static_cast<std::size_t>(plan.Q)) {
    if (h.n_qubits() <= kEnergyCacheQubits) {
      energies_.resize(h.dimension());
      for (BasisState z = 0; z < h.dimension(); ++z) energies_[z] = h.diagonal_energy(z);
    }
    // Center and radius of the diagonal spectrum from the Z-string expansion.
    double radius = 0.0;
    for (const auto &t : h.d0().terms()) {
      if (t.z_mask == 0) {
        center_ = t.coefficient.real();
      } else {
        radius += std::abs(t.coefficient);
      }
    }
    const double rho = std::abs(plan.delta_t) * radius;
    incremental_ = dd.method == DdMethod::taylor && rho <= kMaxIncrementalRho;
    if (incremental_) {
      // Remainder of sum_n rho^n / n! beyond order K is below 1e-17.
      double next = rho;  // rho^(K+1) / (K+1)! for K = order_
      order_ = 0;
      while (order_ + 2 <= rho || next / (1.0 - rho / (order_ + 2)) > 1e-17) {
        ++order_;
        next *= rho / (order_ + 1);
      }
      table_.assign(static_cast<std::size_t>(plan.Q + 1) * (order_ + 1), 0.0);
    }
    de_.reserve(static_cast<std::size_t>(plan.Q) + 1);
  }

  double energy(BasisState z) const {
    return energies_.empty() ? h_.diagonal_energy(z) : energies_[z];
  }

  /// Product of the padded bounds along a path.
  double gamma_weight(std::span<const std::size_t> indices) const {
    double w = 1.0;
    for (std::size_t i : indices) w *= g_.gamma[i] * plan_.gamma_scale;
    return w;
  }

  /// f(indices, z_final, alpha_od) for every path with a nonzero hopping
  /// product, the empty path first.
  template <class F>
  void visit(BasisState z, F &&f) {
    e0_ = energy(z);
    de_.assign(1, 0.0);
    if (incremental_) push_row(0, e0_);
    dfs(0, z, 1.0, f);
  }

 private:
  static constexpr int kEnergyCacheQubits = 24;
  static constexpr double kMaxIncrementalRho = 8.0;

  double *row(int level) { return table_.data() + static_cast<std::size_t>(level) * (order_ + 1); }

  // Row `level` of F_j[n] = h_n(u_0..u_j) j! / (n+j)!, u = dt (E - center).
  void push_row(int level, double e) {
    const double u = plan_.delta_t * (e - center_);
    double *cur = row(level);
    cur[0] = 1.0;
    if (level == 0) {
      for (int n = 1; n <= order_; ++n) cur[n] = cur[n - 1] * u / n;
      return;
    }
    const double *below = row(level - 1);
    for (int n = 1; n <= order_; ++n) cur[n] = (level * below[n] + u * cur[n - 1]) / (n + level);
  }

  cplx divided_difference(int q) {
    if (q == 0) return 1.0;
    if (!incremental_) {
      DdInputs in;
      in.values = de_;
      in.t = plan_.delta_t;
      return dd_exp(in, dd_);
    }
    const double *f = row(q);
    double by_phase[4] = {0.0, 0.0, 0.0, 0.0};
    for (int n = order_; n >= 0; --n) by_phase[n & 3] += f[n];
    const cplx series{by_phase[0] - by_phase[2], by_phase[3] - by_phase[1]};
    return dd_from_effective_energy(center_ - e0_, plan_.delta_t, q) * series;
  }

  template <class F>
  void dfs(int depth, BasisState cur, cplx dprod, F &f) {
    f(std::span<const std::size_t>(idx_.data(), static_cast<std::size_t>(depth)), cur,
      divided_difference(depth) * dprod);
    if (depth == plan_.Q) return;
    const auto &terms = h_.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const BasisState next = terms[i].p.apply(cur);
      const cplx d = terms[i].d(next);
      if (d == 0.0) continue;
      idx_[static_cast<std::size_t>(depth)] = i;
      const double e = energy(next);
      de_.push_back(e - e0_);
      if (incremental_) push_row(depth + 1, e);
      dfs(depth + 1, next, dprod * d, f);
      de_.pop_back();
    }
  }

  const PmrHamiltonian &h_;
  const GammaBounds &g_;
  const SegmentPlan &plan_;
  DdConfig dd_;
  std::vector<std::size_t> idx_;
  std::vector<double> energies_;
  std::vector<double> de_;
  std::vector<double> table_;
  double center_ = 0.0;
  bool incremental_ = false;
  int order_ = 0;
  double e0_ = 0.0;
};

}  // namespace odsim
