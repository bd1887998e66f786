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

#include "odsim/resources.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "odsim/error.hpp"
#include "odsim/hamiltonian_io.hpp"

namespace odsim {

namespace {

std::int64_t string_cost(Mask m) { return 2 * std::popcount(m) + 1; }

std::int64_t ceil_int(double v) { return static_cast<std::int64_t>(std::ceil(v - 1e-9)); }

double log2_terms(std::size_t M) { return std::log2(static_cast<double>(std::max<std::size_t>(M, 1))); }

}  // namespace

CostParams CostParams::from_hamiltonian(const PmrHamiltonian &h) {
  CostParams cp;
  cp.k_d = std::max(1, h.d0().locality());
  std::int64_t c_d0 = 0;
  for (const auto &t : h.d0().terms()) {
    if (t.z_mask != 0) c_d0 += string_cost(t.z_mask);
  }
  std::int64_t c_dd0 = 0, c_d = 0;
  int k_od = 0;
  for (const auto &term : h.terms()) {
    const Mask flip = term.p.x_mask();
    k_od = std::max(k_od, term.p.locality());
    std::int64_t delta = 0;
    // Only strings anticommuting with the flip change the energy.
    for (const auto &t : h.d0().terms()) {
      if (std::popcount(t.z_mask & flip) & 1) delta += string_cost(t.z_mask);
    }
    c_dd0 = std::max(c_dd0, delta);
    std::int64_t d = 0;
    for (const auto &t : term.d.terms()) d += string_cost(t.z_mask);
    c_d = std::max(c_d, d);
  }
  cp.k_od = std::max(1, k_od);
  cp.C_D0 = std::max<std::int64_t>(1, c_d0);
  cp.C_dD0 = std::max<std::int64_t>(1, c_dd0);
  cp.C_D = std::max<std::int64_t>(1, c_d);
  return cp;
}

void CostParams::validate() const {
  if (k_d < 1 || k_od < 1 || C_D0 < 1 || C_dD0 < 1 || C_D < 1) {
    throw InvalidArgument("cost parameters must be positive");
  }
}

std::string to_string(ResourceMethod m) { return m == ResourceMethod::offdiag ? "offdiag" : "taylor_lcu"; }

std::int64_t ancilla_qubit_cost(int Q, std::size_t M) {
  return ceil_int(Q * std::log2(static_cast<double>(M) + 1.0)) + 1;
}

ResourceEstimate resource_table(const SegmentPlan &plan, const CostParams &cp, double T_prime) {
  cp.validate();
  const double Q = plan.Q;
  const double M = static_cast<double>(plan.M);
  const double lg = log2_terms(plan.M);
  const double flip_part = Q * M * (cp.C_dD0 + cp.k_od + lg);
  const std::int64_t anc = ancilla_qubit_cost(plan.Q, plan.M);

  ResourceEstimate e;
  e.method_label = ResourceMethod::offdiag;
  e.Q = plan.Q;
  e.r = plan.r;
  e.T = plan.T;
  e.T_prime = T_prime;
  e.lcu_unitary_count = plan.M;
  e.rows = {
      {"exp(-i dt H)", "short-time evolution", ceil_int(cp.C_D0 + Q * Q + flip_part), anc},
      {"exp(-i dt D0)", "diagonal evolution", cp.C_D0, 1},
      {"W", "B^dagger U_C B", ceil_int(Q * Q + flip_part), anc},
      {"B", "LCU state preparation", ceil_int(Q * M), anc},
      {"U_C", "LCU controlled unitary", ceil_int(Q * Q + flip_part), anc},
      {"U_CP", "controlled permutation", ceil_int(Q * M * (cp.k_od + lg)), anc},
      {"U_CPhi", "controlled phase", ceil_int(Q * Q + flip_part), anc},
  };
  e.gate_cost_segment = e.rows.front().gate_cost;
  e.gate_cost_total = e.gate_cost_segment * plan.r;
  e.qubit_cost = anc;
  return e;
}

ResourceEstimate resource_table(const PmrHamiltonian &h, const GammaBounds &, const SegmentPlan &plan,
                                const CostParams &cp) {
  double coeff_sum = 0.0;
  for (const auto &p : pmr_to_pauli(h)) {
    if (p.z_mask | p.x_mask | p.y_mask) coeff_sum += std::abs(p.coefficient);
  }
  return resource_table(plan, cp, std::abs(plan.t_total) * coeff_sum);
}

ResourceEstimate taylor_lcu_estimate(const std::vector<PauliString> &paulis, double t, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  double coeff_sum = 0.0;
  std::size_t L = 0;
  int k = 1;
  for (const auto &p : paulis) {
    const Mask support = p.z_mask | p.x_mask | p.y_mask;
    if (support == 0 || p.coefficient == 0.0) continue;
    ++L;
    coeff_sum += std::abs(p.coefficient);
    k = std::max(k, std::popcount(support));
  }
  ResourceEstimate e;
  e.method_label = ResourceMethod::taylor_lcu;
  e.T_prime = std::abs(t) * coeff_sum;
  e.T = e.T_prime;
  e.lcu_unitary_count = L;
  if (e.T_prime > 0.0) {
    e.r = std::max(1, static_cast<int>(std::ceil(e.T_prime / std::numbers::ln2 - 1e-12)));
    e.Q = smallest_truncation_order(std::numbers::ln2, epsilon / e.r);
  }
  e.gate_cost_segment = ceil_int(e.Q * static_cast<double>(L) * (k + log2_terms(L)));
  e.gate_cost_total = e.gate_cost_segment * e.r;
  e.qubit_cost = ancilla_qubit_cost(e.Q, L);
  return e;
}

}  // namespace odsim
