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

#include "odsim/pmr.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "odsim/error.hpp"

namespace odsim {

namespace {

Mask full_mask(int n_qubits) {
  return n_qubits >= 64 ? ~Mask{0} : ((Mask{1} << n_qubits) - 1);
}

void check_qubit_count(int n_qubits) {
  if (n_qubits <= 0 || n_qubits > kMaxQubits) {
    throw InvalidArgument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                          std::to_string(n_qubits));
  }
}

void check_threshold(int n_qubits, int threshold, const char *what) {
  if (n_qubits > threshold) {
    throw InvalidArgument(std::string(what) + " needs n_qubits <= " + std::to_string(threshold) +
                          ", got " + std::to_string(n_qubits));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PauliString

PauliString PauliString::from_word(double coefficient, std::string_view word) {
  PauliString p;
  p.coefficient = coefficient;
  p.n_qubits = static_cast<int>(word.size());
  check_qubit_count(p.n_qubits);
  for (std::size_t j = 0; j < word.size(); ++j) {
    Mask bit = Mask{1} << j;
    switch (word[j]) {
      case 'I':
        break;
      case 'X':
        p.x_mask |= bit;
        break;
      case 'Y':
        p.y_mask |= bit;
        break;
      case 'Z':
        p.z_mask |= bit;
        break;
      default:
        throw InvalidArgument(std::string("invalid Pauli letter '") + word[j] + "'");
    }
  }
  return p;
}

std::string PauliString::word() const {
  std::string w(static_cast<std::size_t>(n_qubits), 'I');
  for (int j = 0; j < n_qubits; ++j) {
    Mask bit = Mask{1} << j;
    if (x_mask & bit) w[j] = 'X';
    if (y_mask & bit) w[j] = 'Y';
    if (z_mask & bit) w[j] = 'Z';
  }
  return w;
}

void PauliString::validate() const {
  check_qubit_count(n_qubits);
  if ((z_mask & x_mask) || (z_mask & y_mask) || (x_mask & y_mask)) {
    throw InvalidArgument("Pauli masks must be pairwise disjoint");
  }
  if ((z_mask | x_mask | y_mask) & ~full_mask(n_qubits)) {
    throw InvalidArgument("Pauli mask exceeds qubit count");
  }
  if (!std::isfinite(coefficient)) throw InvalidArgument("Pauli coefficient is not finite");
}

// ---------------------------------------------------------------------------
// DiagonalOperator

DiagonalOperator::DiagonalOperator(int n_qubits, std::vector<DiagonalTerm> terms) : n_qubits_(n_qubits) {
  for (const auto &t : terms) add(t.coefficient, t.z_mask);
}

DiagonalOperator DiagonalOperator::identity(int n_qubits, cplx c) {
  DiagonalOperator d(n_qubits);
  d.add(c, 0);
  return d;
}

void DiagonalOperator::add(cplx c, Mask mask) {
  if (mask & ~full_mask(n_qubits_)) throw InvalidArgument("Z mask exceeds qubit count");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const DiagonalTerm &t, Mask m) { return t.z_mask < m; });
  if (it != terms_.end() && it->z_mask == mask) {
    it->coefficient += c;
  } else {
    terms_.insert(it, DiagonalTerm{c, mask});
  }
}

cplx DiagonalOperator::operator()(BasisState z) const {
  cplx acc = 0.0;
  for (const auto &t : terms_) acc += z_parity(z, t.z_mask) * t.coefficient;
  return acc;
}

double DiagonalOperator::sum_abs() const {
  double s = 0.0;
  for (const auto &t : terms_) s += std::abs(t.coefficient);
  return s;
}

double DiagonalOperator::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto &t : terms_) m = std::max(m, std::abs(t.coefficient));
  return m;
}

int DiagonalOperator::locality() const {
  int k = 0;
  for (const auto &t : terms_) k = std::max(k, __builtin_popcountll(t.z_mask));
  return k;
}

void DiagonalOperator::prune(double rel) {
  double cut = rel * max_abs_coefficient();
  std::erase_if(terms_, [cut](const DiagonalTerm &t) { return std::abs(t.coefficient) <= cut; });
}

DiagonalOperator &DiagonalOperator::operator+=(const DiagonalOperator &other) {
  n_qubits_ = std::max(n_qubits_, other.n_qubits_);
  for (const auto &t : other.terms_) add(t.coefficient, t.z_mask);
  return *this;
}

DiagonalOperator &DiagonalOperator::operator*=(cplx c) {
  for (auto &t : terms_) t.coefficient *= c;
  return *this;
}

DiagonalOperator operator*(const DiagonalOperator &a, const DiagonalOperator &b) {
  DiagonalOperator out(std::max(a.n_qubits_, b.n_qubits_));
  for (const auto &ta : a.terms_) {
    for (const auto &tb : b.terms_) out.add(ta.coefficient * tb.coefficient, ta.z_mask ^ tb.z_mask);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PermutationOperator / PmrHamiltonian

PermutationOperator::PermutationOperator(Mask x_mask) : x_mask_(x_mask) {
  if (x_mask == 0) throw InvalidArgument("permutation mask must be nonzero (no fixed points)");
}

PmrHamiltonian::PmrHamiltonian(int n_qubits, DiagonalOperator d0, std::vector<PmrTerm> terms)
    : n_qubits_(n_qubits), d0_(std::move(d0)), terms_(std::move(terms)) {
  check_qubit_count(n_qubits_);
  Mask full = full_mask(n_qubits_);
  for (const auto &t : d0_.terms()) {
    if (t.coefficient.imag() != 0.0) throw InvalidArgument("D0 must have real coefficients");
    if (t.z_mask & ~full) throw InvalidArgument("D0 mask exceeds qubit count");
  }
  std::vector<Mask> masks;
  for (const auto &t : terms_) {
    if (t.p.x_mask() & ~full) throw InvalidArgument("permutation mask exceeds qubit count");
    masks.push_back(t.p.x_mask());
  }
  std::sort(masks.begin(), masks.end());
  if (std::adjacent_find(masks.begin(), masks.end()) != masks.end()) {
    throw InvalidArgument("permutation masks must be pairwise distinct");
  }
}

cplx PmrHamiltonian::hopping_strength(std::size_t i, BasisState z_after) const {
  if (i >= terms_.size()) {
    throw InvalidArgument("term index " + std::to_string(i) + " out of range (M = " +
                          std::to_string(terms_.size()) + ")");
  }
  return terms_[i].d(z_after);
}

GammaBounds GammaBounds::from(std::vector<double> gamma) {
  GammaBounds g;
  for (double v : gamma) {
    if (!(v >= 0.0)) throw InvalidArgument("Gamma bounds must be nonnegative");
    g.gamma_total += v;
  }
  g.gamma = std::move(gamma);
  return g;
}

// ---------------------------------------------------------------------------
// Operations

PmrHamiltonian pauli_to_pmr(std::span<const PauliString> strings) {
  if (strings.empty()) throw InvalidArgument("empty Pauli-string list");
  const int n = strings.front().n_qubits;
  DiagonalOperator d0(n);
  std::map<Mask, DiagonalOperator> grouped;
  for (const auto &s : strings) {
    s.validate();
    if (s.n_qubits != n) throw InvalidArgument("Pauli strings disagree on the qubit count");
    if (s.coefficient == 0.0) continue;
    if (s.is_diagonal()) {
      d0.add(s.coefficient, s.z_mask);
      continue;
    }
    // Y = (-iZ) X per qubit, diagonal factor to the left of the flip.
    static constexpr cplx kPhase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    cplx c = s.coefficient * kPhase[__builtin_popcountll(s.y_mask) & 3];
    auto [it, inserted] = grouped.try_emplace(s.flip_mask(), n);
    it->second.add(c, s.z_mask | s.y_mask);
  }
  d0.prune(kMergeTolerance);
  std::vector<PmrTerm> terms;
  for (auto &[mask, d] : grouped) {
    d.prune(kMergeTolerance);
    if (d.empty()) continue;
    terms.push_back(PmrTerm{std::move(d), PermutationOperator(mask)});
  }
  return PmrHamiltonian(n, std::move(d0), std::move(terms));
}

double diagonal_energy(const PmrHamiltonian &h, BasisState z) { return h.diagonal_energy(z); }

cplx hopping_strength(const PmrHamiltonian &h, std::size_t i, BasisState z_after) {
  return h.hopping_strength(i, z_after);
}

GammaBounds gamma_bounds(const PmrHamiltonian &h, GammaMode mode, int enumeration_threshold) {
  std::vector<double> gamma;
  gamma.reserve(h.num_terms());
  if (mode == GammaMode::sum_abs) {
    for (const auto &t : h.terms()) gamma.push_back(t.d.sum_abs());
    return GammaBounds::from(std::move(gamma));
  }
  check_threshold(h.n_qubits(), enumeration_threshold, "exact Gamma bounds");
  for (const auto &t : h.terms()) {
    double m = 0.0;
    for (BasisState z = 0; z < h.dimension(); ++z) m = std::max(m, std::abs(t.d(z)));
    gamma.push_back(m);
  }
  return GammaBounds::from(std::move(gamma));
}

Eigen::MatrixXcd dense_matrix(const PmrHamiltonian &h, int dense_threshold) {
  check_threshold(h.n_qubits(), dense_threshold, "dense matrix");
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (BasisState z = 0; z < h.dimension(); ++z) {
    const auto col = static_cast<Eigen::Index>(z);
    m(col, col) += h.diagonal_energy(z);
    for (const auto &t : h.terms()) {
      BasisState to = t.p.apply(z);
      m(static_cast<Eigen::Index>(to), col) += t.d(to);
    }
  }
  return m;
}

double hermiticity_violation(const PmrHamiltonian &h, int enumeration_threshold) {
  check_threshold(h.n_qubits(), enumeration_threshold, "Hermiticity check");
  double worst = 0.0;
  for (BasisState z = 0; z < h.dimension(); ++z) {
    worst = std::max(worst, std::abs(h.d0()(z).imag()));
    for (const auto &t : h.terms()) {
      BasisState to = t.p.apply(z);
      // <to|D P|z> = d(to) must equal conj(<z|D P|to>) = conj(d(z)).
      worst = std::max(worst, std::abs(t.d(to) - std::conj(t.d(z))));
    }
  }
  return worst;
}

Eigen::MatrixXcd PhaseSplitHamiltonian::dense() const {
  check_threshold(n_qubits, kDefaultDenseThreshold, "dense matrix");
  const std::size_t dim = std::size_t{1} << n_qubits;
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (BasisState z = 0; z < dim; ++z) {
    m(static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(z)) += d0(z);
    for (const auto &t : terms) {
      BasisState to = z ^ t.x_mask;
      m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(z)) += t.weight * t.phases[to];
    }
  }
  return m;
}

PhaseSplitHamiltonian alternative_representation(const PmrHamiltonian &h, const GammaBounds &g,
                                                 int enumeration_threshold) {
  check_threshold(h.n_qubits(), enumeration_threshold, "phase split");
  if (g.gamma.size() != h.num_terms()) throw InvalidArgument("Gamma bounds do not match term count");
  PhaseSplitHamiltonian out;
  out.n_qubits = h.n_qubits();
  out.d0 = h.d0();
  const std::size_t dim = h.dimension();
  for (std::size_t i = 0; i < h.num_terms(); ++i) {
    const auto &term = h.terms()[i];
    const double gamma = g.gamma[i];
    if (gamma == 0.0) {
      for (BasisState z = 0; z < dim; ++z) {
        if (term.d(z) != 0.0) throw InvalidArgument("zero Gamma bound for a nonzero D_i");
      }
      continue;
    }
    PhaseTerm plus{gamma / 2, term.p.x_mask(), std::vector<cplx>(dim)};
    PhaseTerm minus{gamma / 2, term.p.x_mask(), std::vector<cplx>(dim)};
    for (BasisState z = 0; z < dim; ++z) {
      cplx w = term.d(z) / gamma;
      double mag = std::abs(w);
      if (mag > 1.0 + 1e-12) {
        throw InvalidArgument("|d_i(z)| exceeds Gamma_i for term " + std::to_string(i));
      }
      // w = cos(theta) e^{i chi}
      double theta = std::acos(std::min(mag, 1.0));
      double chi = mag > 0.0 ? std::arg(w) : 0.0;
      plus.phases[z] = std::polar(1.0, chi + theta);
      minus.phases[z] = std::polar(1.0, chi - theta);
    }
    out.terms.push_back(std::move(plus));
    out.terms.push_back(std::move(minus));
  }
  return out;
}

}  // namespace odsim
