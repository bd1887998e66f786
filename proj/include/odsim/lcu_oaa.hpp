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
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "odsim/divdiff.hpp"
#include "odsim/offdiag_series.hpp"
#include "odsim/pmr.hpp"

namespace odsim {

/// Q registers of dimension M+1 (0 = no operator, v = term v-1) followed by
/// one qubit k. Index = ((i_1 (M+1) + i_2) (M+1) + ... + i_Q) * 2 + k.
class AncillaLayout {
 public:
  AncillaLayout(int Q, std::size_t M);

  int Q() const { return Q_; }
  std::size_t M() const { return M_; }
  /// (M+1)^Q.
  std::size_t num_paths() const { return num_paths_; }
  /// (M+1)^Q * 2.
  std::size_t total_dim() const { return 2 * num_paths_; }

  std::size_t index(std::span<const std::size_t> registers, int k) const;
  /// Register values of the path part of an ancilla index.
  std::vector<std::size_t> registers(std::size_t path_index) const;
  /// Path index of 0-based term indices (i_1, ..., i_q), zero padded.
  std::size_t path_index(std::span<const std::size_t> terms) const;
  /// True when no nonzero register follows a zero one.
  bool is_valid(std::size_t path_index) const;

 private:
  int Q_;
  std::size_t M_;
  std::size_t num_paths_;
};

/// Joint ancilla (x) system amplitudes, ancilla-major: index a * 2^N + z.
struct CompositeState {
  AncillaLayout layout;
  int n_qubits = 0;
  Eigen::VectorXcd amplitudes;

  std::size_t system_dim() const { return std::size_t{1} << n_qubits; }
  static CompositeState zero_ancilla(const AncillaLayout &layout, const StateVector &system);
  /// System amplitudes of ancilla index a.
  StateVector block(std::size_t a) const;
  double block_weight(std::size_t a) const;
};

struct LcuConfig {
  /// Bits per phase angle; empty means exact phases.
  std::optional<int> phase_bits;
  DdConfig dd;
  std::optional<double> s_override;
  /// Maximum composite amplitudes (M+1)^Q * 2 * 2^N.
  std::uint64_t budget = std::uint64_t{1} << 24;
};

/// theta -> 2 pi ceil(2^b theta / 2 pi) / 2^b after reducing theta to
/// [0, 2 pi). b in [1, 64].
double quantize_phase(double theta, int bits);

struct PhaseAngles {
  double chi = 0.0;
  double phi = 0.0;
  /// chi + phi and chi - phi as applied, after quantization if enabled.
  double theta_plus = 0.0;
  double theta_minus = 0.0;
};

PhaseAngles compute_phase_angles(const PmrHamiltonian &h, const GammaBounds &g,
                                 const SegmentPlan &plan, BasisState z, const Path &path,
                                 const LcuConfig &cfg = {});

/// Stage j (0 <= j <= Q) has registers 1..j prepared; stage Q+1 adds the
/// Hadamard on k and equals |psi_0>.
std::vector<Eigen::VectorXcd> psi0_cascade(const GammaBounds &g, const SegmentPlan &plan);
Eigen::VectorXcd prepare_psi0(const GammaBounds &g, const SegmentPlan &plan);

/// Plan used by the LCU emulation: plan_segments plus the optional s
/// override.
SegmentPlan lcu_plan(const PmrHamiltonian &h, const GammaBounds &g, double t, double epsilon,
                     const LcuConfig &cfg);

struct SegmentDiagnostics {
  double zero_weight = 0.0;
};

/// Operators of one segment with the phase table precomputed.
class LcuSegment {
 public:
  LcuSegment(const PmrHamiltonian &h, const GammaBounds &g, const SegmentPlan &plan,
             const LcuConfig &cfg = {});

  const AncillaLayout &layout() const { return layout_; }
  const Eigen::VectorXcd &psi0() const { return psi0_; }
  const SegmentPlan &plan() const { return plan_; }

  /// Householder reflection exchanging |0...0> and |psi_0>; self-inverse,
  /// so both directions apply the same map.
  void apply_B(CompositeState &state) const;
  void apply_U_C(CompositeState &state) const;
  void apply_U_C_inverse(CompositeState &state) const;
  /// Negates the ancilla-zero block.
  static void apply_reflection(CompositeState &state);
  void apply_W(CompositeState &state) const;
  void apply_W_dagger(CompositeState &state) const;
  /// -W R W^dagger R W.
  void apply_A(CompositeState &state) const;
  void apply_diagonal(CompositeState &state) const;

  /// Diagonal factor, then A (just W when Q = 0).
  SegmentDiagnostics oaa_segment(CompositeState &state) const;

  CompositeState make_state(const StateVector &system) const;

 private:
  void check(const CompositeState &state) const;

  const PmrHamiltonian &h_;
  SegmentPlan plan_;
  AncillaLayout layout_;
  Eigen::VectorXcd psi0_;
  Eigen::VectorXcd householder_;  // v = e_0 - psi_0
  double householder_norm2_ = 0.0;
  std::vector<Mask> flips_;         // per path index
  std::vector<char> valid_;
  std::vector<cplx> phase_plus_;    // [path_index * dim + z], k = 0
  std::vector<cplx> phase_minus_;   // k = 1
  std::vector<cplx> diag_phase_;  // exp(-i dt E_z)
};

struct LcuDiagnostics {
  SegmentPlan plan;
  std::vector<double> zero_weight;  // per segment
  double discarded_weight = 0.0;    // summed over segments
};

/// r rounds of oaa_segment, projecting onto the ancilla-zero block and
/// renormalizing after each.
StateVector evolve_lcu(const PmrHamiltonian &h, const GammaBounds &g, const StateVector &state,
                       double t, double epsilon, const LcuConfig &cfg = {},
                       LcuDiagnostics *diagnostics = nullptr);

}  // namespace odsim
