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

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "odsim/pmr.hpp"

namespace odsim {

/// Side-by-side numbers for the off-diagonal method and the Pauli-term LCU
/// baseline. `*_quoted` fields follow the closed forms quoted for each model;
/// `*_exact` fields are measured on the Hamiltonian actually built.
struct ComparisonRecord {
  std::string model;
  int N = 0;                    // model size (qubits for spin rows, sites otherwise)
  std::size_t M_quoted = 0;      // off-diagonal LCU unitaries, quoted count
  std::size_t M_exact = 0;      // PMR terms of the built Hamiltonian
  std::size_t L_quoted = 0;      // Pauli-term LCU unitaries, quoted count
  std::size_t L_exact = 0;      // distinct non-identity Pauli strings
  double T_quoted = 0.0;
  double T_exact = 0.0;         // t * sum of exact max-norms
  double T_prime_quoted = 0.0;
  double T_prime_exact = 0.0;   // t * sum of |Pauli coefficients|, identity excluded
  double gamma_quoted = 0.0;     // per-term bound in the quoted convention (0 if n/a)
  double gamma_exact = 0.0;     // largest exact per-term max-norm
  std::string note;
};

struct ModelInstance {
  std::vector<PauliString> paulis;
  PmrHamiltonian h;
  ComparisonRecord record;
};

enum class Table3Row { zz_only, zz_zx, zzz_zzx };

Table3Row parse_table3_row(const std::string &name);
std::string to_string(Table3Row row);

/// Couplings for the spin rows. `J2`/`J2_tilde` are N x N (row-major),
/// `J3`/`J3_tilde` are N x N x N. Unused arrays may be empty.
struct SpinCouplings {
  int N = 0;
  std::vector<double> J2, J2_tilde;
  std::vector<double> J3, J3_tilde;
};

/// Builds sum J_ij Z_i Z_j (+ sum Jt_ij Z_i X_j), or the three-body analogue.
/// Index combinations that do not give a Z...X string (i = j, or repeated
/// indices in the three-body row) are skipped in the Hamiltonian but kept
/// in the closed-form T and T' sums.
ModelInstance build_table3_model(Table3Row row, const SpinCouplings &c, double t);

/// Edge list of a chain: open for N = 2, periodic otherwise.
std::vector<std::pair<int, int>> chain_edges(int n_sites);

/// Fermi-Hubbard model under Jordan-Wigner on 2N qubits, qubit sigma*N + site,
/// |0> = occupied. `d` only enters the quoted counts (M = N d).
ModelInstance build_fermi_hubbard(int n_sites, int d, double U, double t_h, double t,
                                  const std::vector<std::pair<int, int>> &edges);
ModelInstance build_fermi_hubbard(int n_sites, int d, double U, double t_h, double t);

/// Spin form of the lattice Schwinger model on N qubits (site i -> qubit i-1).
ModelInstance build_schwinger(int N, double m, double g, double a, double eps0, double t);

struct PlaneWaveData {
  std::vector<std::array<double, 3>> k_vectors;
  std::vector<std::array<double, 3>> r_points;  // one per basis function
  std::vector<std::array<double, 3>> R_nuclei;
  std::vector<double> zeta;
  double Omega = 1.0;
  int N_basis = 0;

  void validate() const;
};

struct ElectronicTimes {
  double T = 0.0;
  double T_prime = 0.0;
  std::size_t M = 0;
  std::size_t L = 0;
};

/// Closed-form T and T' for the plane-wave dual-basis Hamiltonian. Zero
/// k-vectors are skipped.
ElectronicTimes electronic_structure_times(const PlaneWaveData &data, double t);

/// Jordan-Wigner Hamiltonian on 2N qubits (qubit sigma*N + p) from explicit
/// plane-wave data. Intended for small N.
ModelInstance build_electronic_structure(const PlaneWaveData &data, double t);

/// Fills L_exact, T_prime_exact, M_exact, T_exact and gamma_exact from the
/// Pauli list and its PMR form.
void fill_exact_fields(ModelInstance &inst, double t);

}  // namespace odsim
