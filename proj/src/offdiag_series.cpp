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

#include "odsim/offdiag_series.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "odsim/compensated.hpp"
#include "odsim/error.hpp"
#include "odsim/path_kernel.hpp"

namespace odsim {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double partial_sum(double x, int Q) {
  CompensatedSum s;
  double term = 1.0;
  for (int q = 0; q <= Q; ++q) {
    if (q > 0) term *= x / q;
    s.add(term);
  }
  return s.value();
}

void check_state(const PmrHamiltonian &h, const StateVector &state) {
  if (static_cast<std::size_t>(state.size()) != h.dimension()) {
    throw InvalidArgument("state has " + std::to_string(state.size()) + " amplitudes, expected 2^" +
                          std::to_string(h.n_qubits()));
  }
}

}  // namespace

double series_tail(double x, int Q) {
  if (x < 0.0 || !std::isfinite(x)) throw InvalidArgument("series argument must be finite and >= 0");
  if (Q < 0) throw InvalidArgument("truncation order must be >= 0");
  if (x == 0.0) return 0.0;
  double term = 1.0;
  for (int q = 1; q <= Q + 1; ++q) term *= x / q;  // x^(Q+1) / (Q+1)!
  CompensatedSum s;
  for (int q = Q + 1;; ++q) {
    s.add(term);
    const double next = term * x / (q + 1);
    if (q + 2 > x && next <= 1e-18 * s.value()) {
      // Remaining terms are bounded by a geometric series with ratio x/(q+2).
      s.add(next / (1.0 - x / (q + 2)));
      break;
    }
    term = next;
    if (q > 100000) throw NumericalFailure("series tail did not converge");
  }
  return s.value();
}

int smallest_truncation_order(double x, double budget) {
  if (!(budget > 0.0)) throw InvalidArgument("tail budget must be positive");
  for (int Q = 0; Q <= 10000; ++Q) {
    if (series_tail(x, Q) <= budget) return Q;
  }
  throw NumericalFailure("no truncation order meets the tail budget");
}

SegmentPlan plan_segments(const PmrHamiltonian &h, const GammaBounds &g, double t, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
  if (g.gamma.size() != h.num_terms()) throw InvalidArgument("Gamma bounds do not match term count");
  SegmentPlan p;
  p.t_total = t;
  p.epsilon = epsilon;
  p.gamma_total = g.gamma_total;
  p.M = h.num_terms();
  p.T = std::abs(t) * g.gamma_total;
  p.diagonal_only = p.M == 0 || g.gamma_total == 0.0;
  if (p.T == 0.0) {
    p.r = 1;
    p.delta_t = t;
    p.Q = 0;
    p.tail_bound = 0.0;
    p.s = 1.0;
    p.x = 0.0;
    return p;
  }
  // The 1e-12 slack keeps T = k ln 2 from rounding up to k + 1 segments.
  p.r = std::max(1, static_cast<int>(std::ceil(p.T / kLn2 - 1e-12)));
  p.delta_t = t / p.r;
  p.gamma_scale = p.r * kLn2 / p.T;
  p.x = kLn2;
  p.Q = smallest_truncation_order(p.x, epsilon / p.r);
  p.tail_bound = series_tail(p.x, p.Q);
  p.s = partial_sum(p.x, p.Q);
  return p;
}

SegmentPlan with_target_s(const SegmentPlan &plan, double s_target) {
  if (plan.T == 0.0) throw InvalidArgument("cannot retarget s of a plan with T = 0");
  if (plan.Q == 0) throw InvalidArgument("s is fixed to 1 when Q = 0");
  const double x_min = plan.gamma_total * std::abs(plan.delta_t);
  if (s_target < partial_sum(x_min, plan.Q)) {
    throw InvalidArgument("target s is below the value the unpadded bounds give");
  }
  double lo = x_min, hi = std::max(1.0, x_min);
  while (partial_sum(hi, plan.Q) < s_target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (partial_sum(mid, plan.Q) < s_target ? lo : hi) = mid;
  }
  SegmentPlan p = plan;
  p.x = hi;
  p.gamma_scale = hi / x_min;
  p.s = s_target;
  p.tail_bound = series_tail(hi, plan.Q);
  return p;
}

void decompose_beta(cplx beta, double &chi, double &phi) {
  const double mag = std::abs(beta);
  if (mag == 0.0) {
    chi = 0.0;
    phi = std::numbers::pi / 2;
    return;
  }
  chi = std::arg(beta);
  phi = std::acos(std::min(mag, 1.0));
}

PathCoefficient path_coefficient(const PmrHamiltonian &h, const GammaBounds &g,
                                 const SegmentPlan &plan, BasisState z, const Path &path,
                                 const DdConfig &dd) {
  if (path.q() > plan.Q) throw InvalidArgument("path is longer than the truncation order");
  if (z >= h.dimension()) throw InvalidArgument("basis state out of range");
  const double dt = plan.delta_t;
  std::vector<double> de{0.0};
  const double e0 = h.diagonal_energy(z);
  BasisState cur = z;
  cplx dprod = 1.0;
  double gamma_path = 1.0;
  for (std::size_t i : path.indices) {
    if (i >= h.num_terms()) throw InvalidArgument("path index out of range");
    cur = h.terms()[i].p.apply(cur);
    dprod *= h.hopping_strength(i, cur);
    gamma_path *= g.gamma[i] * plan.gamma_scale;
    de.push_back(h.diagonal_energy(cur) - e0);
  }
  PathCoefficient c;
  c.z_final = cur;
  const cplx diag_phase = std::polar(1.0, -dt * e0);
  if (dprod == 0.0) {
    c.alpha = c.alpha_od = c.beta = 0.0;
    decompose_beta(0.0, c.chi, c.phi);
    return c;
  }
  if (gamma_path == 0.0) throw InvalidArgument("zero Gamma bound on a path with nonzero hopping");
  DdInputs in;
  in.values = std::move(de);
  in.t = dt;
  c.alpha_od = dd_exp(in, dd) * dprod;
  c.alpha = diag_phase * c.alpha_od;
  c.beta = c.alpha_od / (gamma_path * dd_magnitude_bound(dt, path.q()));
  decompose_beta(c.beta, c.chi, c.phi);
  return c;
}

std::uint64_t path_state_products(std::size_t dimension, std::size_t M, int Q) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 paths = 0, level = 1;
  for (int q = 0; q <= Q; ++q) {
    paths += level;
    if (paths > kMax) return kMax;
    level *= M;
    if (level > kMax) level = kMax;
  }
  unsigned __int128 total = paths * dimension;
  return total > kMax ? kMax : static_cast<std::uint64_t>(total);
}

StateVector apply_diagonal(const PmrHamiltonian &h, const StateVector &state, double delta_t) {
  check_state(h, state);
  StateVector out(state.size());
  for (Eigen::Index z = 0; z < state.size(); ++z) {
    out[z] = state[z] * std::polar(1.0, -delta_t * h.diagonal_energy(static_cast<BasisState>(z)));
  }
  return out;
}

namespace {

StateVector run_series(const PmrHamiltonian &h, const GammaBounds &g, const SegmentPlan &plan,
                       const StateVector &state, const SeriesOptions &opt, bool with_diagonal) {
  check_state(h, state);
  if (plan.M != h.num_terms()) throw InvalidArgument("plan does not match the Hamiltonian");
  const std::uint64_t work = path_state_products(h.dimension(), h.num_terms(), plan.Q);
  if (work > opt.budget) {
    throw BudgetExceeded("segment needs 2^N * sum_{q<=Q} M^q = " + std::to_string(work) +
                         " path-state products (N=" + std::to_string(h.n_qubits()) +
                         ", M=" + std::to_string(h.num_terms()) + ", Q=" + std::to_string(plan.Q) +
                         "), budget is " + std::to_string(opt.budget));
  }
  PathKernel kernel(h, g, plan, opt.dd);
  std::vector<CompensatedComplexSum> acc(static_cast<std::size_t>(state.size()));
  for (BasisState z = 0; z < h.dimension(); ++z) {
    cplx amp = state[static_cast<Eigen::Index>(z)];
    if (amp == 0.0) continue;
    if (with_diagonal) amp *= std::polar(1.0, -plan.delta_t * kernel.energy(z));
    kernel.visit(z, [&](std::span<const std::size_t>, BasisState z_final, cplx alpha_od) {
      acc[z_final].add(alpha_od * amp);
    });
  }
  StateVector out(state.size());
  for (Eigen::Index z = 0; z < state.size(); ++z) out[z] = acc[static_cast<std::size_t>(z)].value();
  return out;
}

}  // namespace

StateVector apply_Uod_truncated(const PmrHamiltonian &h, const GammaBounds &g,
                                const SegmentPlan &plan, const StateVector &state,
                                const SeriesOptions &opt) {
  return run_series(h, g, plan, state, opt, false);
}

StateVector apply_segment_alpha_form(const PmrHamiltonian &h, const GammaBounds &g,
                                     const SegmentPlan &plan, const StateVector &state,
                                     const SeriesOptions &opt) {
  return run_series(h, g, plan, state, opt, true);
}

StateVector evolve(const PmrHamiltonian &h, const GammaBounds &g, const StateVector &state, double t,
                   double epsilon, const SeriesOptions &opt, SegmentPlan *plan_out) {
  check_state(h, state);
  const SegmentPlan plan = plan_segments(h, g, t, epsilon);
  if (plan_out) *plan_out = plan;
  StateVector psi = state;
  for (int k = 0; k < plan.r; ++k) {
    psi = apply_diagonal(h, psi, plan.delta_t);
    if (!plan.diagonal_only && plan.Q > 0) psi = apply_Uod_truncated(h, g, plan, psi, opt);
  }
  return psi;
}

}  // namespace odsim
