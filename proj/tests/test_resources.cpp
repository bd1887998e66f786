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

#include "odsim/error.hpp"
#include "odsim/models.hpp"
#include "odsim/resources.hpp"

namespace odsim {
namespace {

SegmentPlan manual_plan(int Q, std::size_t M, int r = 1) {
  SegmentPlan p;
  p.Q = Q;
  p.M = M;
  p.r = r;
  return p;
}

const ResourceRow &row(const ResourceEstimate &e, const std::string &name) {
  for (const auto &r : e.rows) {
    if (r.unitary == name) return r;
  }
  throw std::runtime_error("missing row " + name);
}

TEST(Resources, SingleTermSingleOrder) {
  CostParams cp{.k_d = 2, .k_od = 3, .C_D0 = 7, .C_dD0 = 5, .C_D = 4};
  const ResourceEstimate e = resource_table(manual_plan(1, 1), cp, 2.0);
  EXPECT_EQ(e.gate_cost_segment, 7 + 1 + (5 + 3 + 0));
  EXPECT_EQ(row(e, "exp(-i dt D0)").gate_cost, 7);
  EXPECT_EQ(row(e, "B").gate_cost, 1);
  EXPECT_EQ(row(e, "U_CP").gate_cost, 3);
  EXPECT_EQ(row(e, "W").gate_cost, 1 + 8);
  EXPECT_EQ(e.qubit_cost, 2);
  EXPECT_EQ(e.rows.size(), 7u);
  EXPECT_EQ(e.constant_label, "asymptotic-constant=1");
  EXPECT_EQ(e.method_label, ResourceMethod::offdiag);
}

TEST(Resources, QMTermScalesWithM) {
  CostParams cp{.k_d = 1, .k_od = 2, .C_D0 = 3, .C_dD0 = 6, .C_D = 1};
  for (std::size_t M : {2u, 4u, 8u}) {
    const ResourceEstimate a = resource_table(manual_plan(5, M), cp, 1.0);
    const ResourceEstimate b = resource_table(manual_plan(5, 2 * M), cp, 1.0);
    EXPECT_EQ(row(b, "B").gate_cost, 2 * row(a, "B").gate_cost);
    const double lg = std::log2(static_cast<double>(M));
    const double qm_a = 5.0 * M * (cp.C_dD0 + cp.k_od + lg);
    const double qm_b = 5.0 * 2 * M * (cp.C_dD0 + cp.k_od + lg + 1);
    EXPECT_EQ(row(a, "U_C").gate_cost, static_cast<std::int64_t>(std::ceil(25 + qm_a - 1e-9)));
    EXPECT_EQ(row(b, "U_C").gate_cost, static_cast<std::int64_t>(std::ceil(25 + qm_b - 1e-9)));
  }
}

TEST(Resources, QubitCost) {
  EXPECT_EQ(ancilla_qubit_cost(1, 1), 2);
  EXPECT_EQ(ancilla_qubit_cost(3, 3), 7);
  EXPECT_EQ(ancilla_qubit_cost(4, 2), 8);
  EXPECT_EQ(ancilla_qubit_cost(0, 5), 1);
}

TEST(Resources, TotalIsSegmentTimesR) {
  const CostParams cp;
  const ResourceEstimate e = resource_table(manual_plan(4, 3, 9), cp, 1.0);
  EXPECT_EQ(e.gate_cost_total, 9 * e.gate_cost_segment);
  EXPECT_EQ(e.r, 9);
}

TEST(Resources, FermiHubbardTable) {
  const ModelInstance m = build_fermi_hubbard(4, 1, 4.0, 1.0, 1.0);
  const GammaBounds g = gamma_bounds(m.h, GammaMode::exact);
  const SegmentPlan plan = plan_segments(m.h, g, 1.0, 1e-3);
  const CostParams cp = CostParams::from_hamiltonian(m.h);
  EXPECT_EQ(cp.k_d, 2);
  EXPECT_EQ(cp.k_od, 2);
  const ResourceEstimate e = resource_table(m.h, g, plan, cp);
  ASSERT_EQ(e.rows.size(), 7u);
  for (const auto &r : e.rows) {
    EXPECT_GT(r.gate_cost, 0) << r.unitary;
    EXPECT_GT(r.qubit_cost, 0) << r.unitary;
  }
  EXPECT_EQ(e.Q, plan.Q);
  EXPECT_EQ(e.r, plan.r);
  EXPECT_NEAR(e.T, m.record.T_exact, 1e-12);
  EXPECT_NEAR(e.T_prime, m.record.T_prime_exact, 1e-12);
  EXPECT_EQ(e.lcu_unitary_count, m.h.num_terms());
  EXPECT_EQ(e.qubit_cost, ancilla_qubit_cost(plan.Q, plan.M));
}

TEST(Resources, CostParamsFromHamiltonian) {
  const std::vector<PauliString> ps = {PauliString::from_word(1.0, "ZZI"), PauliString::from_word(0.5, "IIZ"),
                                       PauliString::from_word(0.3, "XII"), PauliString::from_word(0.2, "XZI")};
  const CostParams cp = CostParams::from_hamiltonian(pauli_to_pmr(ps));
  EXPECT_EQ(cp.C_D0, 5 + 3);
  EXPECT_EQ(cp.C_dD0, 5);  // only ZZI anticommutes with X on qubit 0
  EXPECT_EQ(cp.C_D, 1 + 3);
  EXPECT_EQ(cp.k_od, 1);
  CostParams bad;
  bad.C_D = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(Resources, TaylorBaseline) {
  const std::vector<PauliString> ps = {PauliString::from_word(1.0, "XX"), PauliString::from_word(-0.5, "ZI"),
                                       PauliString::from_word(3.0, "II")};
  const ResourceEstimate e = taylor_lcu_estimate(ps, 2.0, 1e-3);
  EXPECT_EQ(e.method_label, ResourceMethod::taylor_lcu);
  EXPECT_EQ(e.lcu_unitary_count, 2u);
  EXPECT_DOUBLE_EQ(e.T_prime, 3.0);
  EXPECT_EQ(e.r, 5);
  EXPECT_EQ(e.Q, smallest_truncation_order(std::log(2.0), 1e-3 / 5));
  EXPECT_EQ(e.gate_cost_segment, static_cast<std::int64_t>(std::ceil(e.Q * 2 * (2 + 1.0) - 1e-9)));
  EXPECT_THROW(taylor_lcu_estimate(ps, 1.0, 0.0), InvalidArgument);
}

}  // namespace
}  // namespace odsim
