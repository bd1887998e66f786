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
#include <string>
#include <vector>

#include "odsim/offdiag_series.hpp"
#include "odsim/pmr.hpp"

namespace odsim {

/// Abstract gate-cost units. Every field is a positive integer.
struct CostParams {
  int k_d = 1;   // locality of D0
  int k_od = 1;  // largest flip-mask weight
  std::int64_t C_D0 = 1;
  std::int64_t C_dD0 = 1;
  std::int64_t C_D = 1;

  /// Counts 2m + 1 gates per weight-m Z-string (m CNOT pairs plus one
  /// rotation) and clamps each unit at 1.
  static CostParams from_hamiltonian(const PmrHamiltonian &h);
  void validate() const;
};

enum class ResourceMethod { offdiag, taylor_lcu };
std::string to_string(ResourceMethod m);

struct ResourceRow {
  std::string unitary;
  std::string description;
  std::int64_t gate_cost = 0;
  std::int64_t qubit_cost = 0;
};

/// Asymptotic cost rows evaluated with every hidden constant set to 1 and
/// logarithms in base 2. These are scaling figures, not gate counts.
struct ResourceEstimate {
  ResourceMethod method_label = ResourceMethod::offdiag;
  int Q = 0;
  int r = 1;
  double T = 0.0;
  double T_prime = 0.0;
  std::size_t lcu_unitary_count = 0;
  std::int64_t gate_cost_segment = 0;
  std::int64_t gate_cost_total = 0;
  std::int64_t qubit_cost = 0;
  std::vector<ResourceRow> rows;  // empty for taylor_lcu
  std::string constant_label = "asymptotic-constant=1";
};

/// ceil(Q log2(M + 1)) + 1.
std::int64_t ancilla_qubit_cost(int Q, std::size_t M);

/// T_prime is filled from the Pauli expansion of h.
ResourceEstimate resource_table(const PmrHamiltonian &h, const GammaBounds &g, const SegmentPlan &plan,
                                const CostParams &cp);

/// Same figures when the bounds are taken as given rather than computed,
/// e.g. to instantiate the rows under a quoted Gamma convention.
ResourceEstimate resource_table(const SegmentPlan &plan, const CostParams &cp, double T_prime);

/// Pauli-sum LCU reference: T' = |t| sum |c|, L unitaries, Q from the same
/// tail law, gate cost Q L (k + log2 L) per segment with k the largest Pauli
/// weight.
ResourceEstimate taylor_lcu_estimate(const std::vector<PauliString> &paulis, double t, double epsilon);

}  // namespace odsim
