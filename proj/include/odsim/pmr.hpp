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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace odsim {

using cplx = std::complex<double>;
using BasisState = std::uint64_t;
using Mask = std::uint64_t;

inline constexpr int kMaxQubits = 62;
inline constexpr int kDefaultDenseThreshold = 12;
inline constexpr int kDefaultEnumerationThreshold = 20;

/// Sign of the Z-string `mask` at basis state `z`: qubit j contributes
/// (-1)^{bit_j(z)}, bit 0 being the least significant.
inline double z_parity(BasisState z, Mask mask) {
  return (__builtin_popcountll(z & mask) & 1) ? -1.0 : 1.0;
}

/// Real multiple of a tensor product of single-qubit Paulis.
///
/// The three masks are pairwise disjoint; a qubit in none of them carries
/// the identity. In the text form, character j of the word is qubit j.
struct PauliString {
  double coefficient = 0.0;
  Mask z_mask = 0;
  Mask x_mask = 0;
  Mask y_mask = 0;
  int n_qubits = 0;

  static PauliString from_word(double coefficient, std::string_view word);
  std::string word() const;
  bool is_diagonal() const { return (x_mask | y_mask) == 0; }
  Mask flip_mask() const { return x_mask | y_mask; }
  /// Throws InvalidArgument when the masks overlap or overflow n_qubits.
  void validate() const;
};

struct DiagonalTerm {
  cplx coefficient;
  Mask z_mask = 0;
};

/// Linear combination of Z-strings, kept sorted by mask with one entry per
/// mask.
class DiagonalOperator {
 public:
  DiagonalOperator() = default;
  explicit DiagonalOperator(int n_qubits) : n_qubits_(n_qubits) {}
  DiagonalOperator(int n_qubits, std::vector<DiagonalTerm> terms);

  static DiagonalOperator identity(int n_qubits, cplx c = 1.0);

  /// Adds c * Z_mask, merging with an existing term of the same mask.
  void add(cplx c, Mask mask);

  cplx operator()(BasisState z) const;

  int n_qubits() const { return n_qubits_; }
  const std::vector<DiagonalTerm> &terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  double sum_abs() const;
  double max_abs_coefficient() const;
  /// Largest popcount over term masks (0 for constants).
  int locality() const;

  /// Drops terms whose magnitude is below rel * (largest magnitude).
  void prune(double rel);

  DiagonalOperator &operator+=(const DiagonalOperator &other);
  DiagonalOperator &operator*=(cplx c);
  friend DiagonalOperator operator+(DiagonalOperator a, const DiagonalOperator &b) { return a += b; }
  friend DiagonalOperator operator*(const DiagonalOperator &a, const DiagonalOperator &b);
  friend DiagonalOperator operator*(DiagonalOperator a, cplx c) { return a *= c; }

 private:
  int n_qubits_ = 0;
  std::vector<DiagonalTerm> terms_;
};

/// Fixed-point-free bit flip z -> z XOR x_mask.
class PermutationOperator {
 public:
  PermutationOperator() = default;
  explicit PermutationOperator(Mask x_mask);
  Mask x_mask() const { return x_mask_; }
  BasisState apply(BasisState z) const { return z ^ x_mask_; }
  int locality() const { return __builtin_popcountll(x_mask_); }

 private:
  Mask x_mask_ = 1;
};

struct PmrTerm {
  DiagonalOperator d;
  PermutationOperator p;
};

/// H = D0 + sum_i D_i P_i with distinct, nonzero flip masks.
class PmrHamiltonian {
 public:
  PmrHamiltonian() = default;
  PmrHamiltonian(int n_qubits, DiagonalOperator d0, std::vector<PmrTerm> terms);

  int n_qubits() const { return n_qubits_; }
  const DiagonalOperator &d0() const { return d0_; }
  const std::vector<PmrTerm> &terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  std::size_t dimension() const { return std::size_t{1} << n_qubits_; }

  double diagonal_energy(BasisState z) const { return d0_(z).real(); }
  /// d_i(z_after) = <z_after|D_i|z_after>, where z_after = P_i z.
  cplx hopping_strength(std::size_t i, BasisState z_after) const;

 private:
  int n_qubits_ = 0;
  DiagonalOperator d0_;
  std::vector<PmrTerm> terms_;
};

enum class GammaMode { exact, sum_abs };

struct GammaBounds {
  std::vector<double> gamma;
  double gamma_total = 0.0;

  static GammaBounds from(std::vector<double> gamma);
};

/// Relative magnitude below which merged diagonal coefficients are dropped.
inline constexpr double kMergeTolerance = 1e-14;

PmrHamiltonian pauli_to_pmr(std::span<const PauliString> strings);

double diagonal_energy(const PmrHamiltonian &h, BasisState z);
cplx hopping_strength(const PmrHamiltonian &h, std::size_t i, BasisState z_after);

/// Per-term bounds Gamma_i >= max_z |d_i(z)|. `exact` enumerates all 2^N
/// basis states and is limited to n_qubits <= enumeration_threshold.
GammaBounds gamma_bounds(const PmrHamiltonian &h, GammaMode mode,
                         int enumeration_threshold = kDefaultEnumerationThreshold);

Eigen::MatrixXcd dense_matrix(const PmrHamiltonian &h, int dense_threshold = kDefaultDenseThreshold);

/// Largest |H_{ab} - conj(H_{ba})| over all basis pairs, by enumeration.
double hermiticity_violation(const PmrHamiltonian &h,
                             int enumeration_threshold = kDefaultEnumerationThreshold);

/// One unitary generalized permutation (weight * Theta) P with |Theta(z)| = 1.
struct PhaseTerm {
  double weight = 0.0;
  Mask x_mask = 0;
  std::vector<cplx> phases;  // indexed by basis state
};

/// H = D0 + sum_i (Gamma_i/2)(Theta_i^(1) + Theta_i^(2)) P_i.
struct PhaseSplitHamiltonian {
  int n_qubits = 0;
  DiagonalOperator d0;
  std::vector<PhaseTerm> terms;  // two per retained original term

  Eigen::MatrixXcd dense() const;
};

/// Splits every D_i into the average of two pure-phase diagonals. Terms with
/// Gamma_i = 0 must have D_i = 0 and are dropped.
PhaseSplitHamiltonian alternative_representation(
    const PmrHamiltonian &h, const GammaBounds &g,
    int enumeration_threshold = kDefaultEnumerationThreshold);

}  // namespace odsim
