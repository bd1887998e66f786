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

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "odsim/divdiff.hpp"
#include "odsim/pmr.hpp"

namespace odsim {

using StateVector = Eigen::VectorXcd;

/// Parameters of the segmented evolution.
///
/// Every Gamma_i is padded by gamma_scale >= 1 so that the per-segment
/// series argument x = gamma_scale * gamma_total * |delta_t| equals ln 2
/// exactly; then s = 2 - tail_bound.
struct SegmentPlan {
  double t_total = 0.0;
  double epsilon = 0.0;
  double gamma_total = 0.0;
  double T = 0.0;
  int r = 1;
  double delta_t = 0.0;
  int Q = 0;
  double tail_bound = 0.0;
  double s = 1.0;
  double gamma_scale = 1.0;
  double x = 0.0;
  bool diagonal_only = false;
  std::size_t M = 0;
};

/// sum_{q > Q} x^q / q! for x >= 0, with a geometric cap on the remainder.
double series_tail(double x, int Q);

/// Smallest Q >= 0 with series_tail(x, Q) <= budget.
int smallest_truncation_order(double x, double budget);

/// Throws InvalidArgument unless 0 < epsilon < 1.
SegmentPlan plan_segments(const PmrHamiltonian &h, const GammaBounds &g, double t, double epsilon);

/// Re-pads the bounds so the LCU normalization is s_target at the same Q.
/// Throws InvalidArgument if that would shrink any bound below Gamma_i.
SegmentPlan with_target_s(const SegmentPlan &plan, double s_target);

/// Path (i_1, ..., i_q) of 0-based term indices.
struct Path {
  std::vector<std::size_t> indices;
  int q() const { return static_cast<int>(indices.size()); }
};

struct PathCoefficient {
  /// Includes the diagonal phase exp(-i dt E_z).
  cplx alpha;
  /// Same without the diagonal phase; the amplitude deposited by U_od.
  cplx alpha_od;
  cplx beta;
  double chi = 0.0;
  double phi = 0.0;
  BasisState z_final = 0;
};

/// chi = arg(beta), phi = arccos|beta|; beta = 0 gives (0, pi/2).
void decompose_beta(cplx beta, double &chi, double &phi);

PathCoefficient path_coefficient(const PmrHamiltonian &h, const GammaBounds &g,
                                 const SegmentPlan &plan, BasisState z, const Path &path,
                                 const DdConfig &dd = {});

struct SeriesOptions {
  DdConfig dd;
  /// Maximum 2^N * sum_{q <= Q} M^q per segment.
  std::uint64_t budget = std::uint64_t{1} << 28;
};

/// Number of (basis state, path) pairs one segment visits in the worst case,
/// saturating at UINT64_MAX.
std::uint64_t path_state_products(std::size_t dimension, std::size_t M, int Q);

StateVector apply_diagonal(const PmrHamiltonian &h, const StateVector &state, double delta_t);

/// sum_z sum_{|path| <= Q} alpha_od(z, path) psi(z) |z_q>.
StateVector apply_Uod_truncated(const PmrHamiltonian &h, const GammaBounds &g,
                                const SegmentPlan &plan, const StateVector &state,
                                const SeriesOptions &opt = {});

/// One full segment with the diagonal phase folded into every path
/// coefficient; equal to apply_Uod_truncated(apply_diagonal(state)).
StateVector apply_segment_alpha_form(const PmrHamiltonian &h, const GammaBounds &g,
                                     const SegmentPlan &plan, const StateVector &state,
                                     const SeriesOptions &opt = {});

/// r segments of apply_diagonal followed by apply_Uod_truncated.
StateVector evolve(const PmrHamiltonian &h, const GammaBounds &g, const StateVector &state, double t,
                   double epsilon, const SeriesOptions &opt = {}, SegmentPlan *plan_out = nullptr);

}  // namespace odsim
