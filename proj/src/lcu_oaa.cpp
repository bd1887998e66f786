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

#include "odsim/lcu_oaa.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "odsim/error.hpp"
#include "odsim/path_kernel.hpp"

namespace odsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t checked_pow(std::size_t base, int exp) {
  std::size_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && v > SIZE_MAX / base) throw BudgetExceeded("ancilla register space overflows");
    v *= base;
  }
  return v;
}

std::pair<cplx, cplx> phase_pair(double chi, double phi, const std::optional<int> &bits) {
  double plus = chi + phi, minus = chi - phi;
  if (bits) {
    plus = quantize_phase(plus, *bits);
    minus = quantize_phase(minus, *bits);
  }
  return {std::polar(1.0, plus), std::polar(1.0, minus)};
}

}  // namespace

// ---------------------------------------------------------------------------
// AncillaLayout

AncillaLayout::AncillaLayout(int Q, std::size_t M) : Q_(Q), M_(M), num_paths_(checked_pow(M + 1, Q)) {
  if (Q < 0) throw InvalidArgument("truncation order must be >= 0");
}

std::size_t AncillaLayout::index(std::span<const std::size_t> registers, int k) const {
  if (registers.size() != static_cast<std::size_t>(Q_)) throw InvalidArgument("need Q register values");
  if (k != 0 && k != 1) throw InvalidArgument("k must be 0 or 1");
  std::size_t p = 0;
  for (std::size_t v : registers) {
    if (v > M_) throw InvalidArgument("register value exceeds M");
    p = p * (M_ + 1) + v;
  }
  return 2 * p + static_cast<std::size_t>(k);
}

std::vector<std::size_t> AncillaLayout::registers(std::size_t path_index) const {
  std::vector<std::size_t> regs(static_cast<std::size_t>(Q_));
  for (int j = Q_ - 1; j >= 0; --j) {
    regs[static_cast<std::size_t>(j)] = path_index % (M_ + 1);
    path_index /= M_ + 1;
  }
  return regs;
}

std::size_t AncillaLayout::path_index(std::span<const std::size_t> terms) const {
  if (terms.size() > static_cast<std::size_t>(Q_)) throw InvalidArgument("path longer than Q");
  std::size_t p = 0;
  for (int j = 0; j < Q_; ++j) {
    std::size_t v = 0;
    if (static_cast<std::size_t>(j) < terms.size()) {
      if (terms[j] >= M_) throw InvalidArgument("term index out of range");
      v = terms[j] + 1;
    }
    p = p * (M_ + 1) + v;
  }
  return p;
}

bool AncillaLayout::is_valid(std::size_t path_index) const {
  bool seen_zero = false;
  for (std::size_t v : registers(path_index)) {
    if (v == 0) {
      seen_zero = true;
    } else if (seen_zero) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// CompositeState

CompositeState CompositeState::zero_ancilla(const AncillaLayout &layout, const StateVector &system) {
  const auto dim = static_cast<std::size_t>(system.size());
  if (dim == 0 || (dim & (dim - 1)) != 0) throw InvalidArgument("system dimension must be a power of two");
  CompositeState s{layout, 0, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.total_dim() * dim))};
  while ((std::size_t{1} << s.n_qubits) < dim) ++s.n_qubits;
  s.amplitudes.head(system.size()) = system;
  return s;
}

StateVector CompositeState::block(std::size_t a) const {
  const auto d = static_cast<Eigen::Index>(system_dim());
  return amplitudes.segment(static_cast<Eigen::Index>(a) * d, d);
}

double CompositeState::block_weight(std::size_t a) const { return block(a).squaredNorm(); }

// ---------------------------------------------------------------------------
// Phases and state preparation

double quantize_phase(double theta, int bits) {
  if (bits < 1 || bits > 64) throw InvalidArgument("phase bits must lie in [1, 64]");
  double reduced = std::fmod(theta, kTwoPi);
  if (reduced < 0.0) reduced += kTwoPi;
  return std::ldexp(kTwoPi * std::ceil(std::ldexp(reduced / kTwoPi, bits)), -bits);
}

PhaseAngles compute_phase_angles(const PmrHamiltonian &h, const GammaBounds &g,
                                 const SegmentPlan &plan, BasisState z, const Path &path,
                                 const LcuConfig &cfg) {
  const PathCoefficient c = path_coefficient(h, g, plan, z, path, cfg.dd);
  PhaseAngles a;
  a.chi = c.chi;
  a.phi = c.phi;
  a.theta_plus = c.chi + c.phi;
  a.theta_minus = c.chi - c.phi;
  if (cfg.phase_bits) {
    a.theta_plus = quantize_phase(a.theta_plus, *cfg.phase_bits);
    a.theta_minus = quantize_phase(a.theta_minus, *cfg.phase_bits);
  }
  return a;
}

std::vector<Eigen::VectorXcd> psi0_cascade(const GammaBounds &g, const SegmentPlan &plan) {
  const std::size_t M = g.gamma.size();
  const AncillaLayout layout(plan.Q, M);
  const double x = plan.gamma_scale * g.gamma_total * std::abs(plan.delta_t);
  // tails[j] = sum_{q=j}^{Q} x^q / q!
  std::vector<double> weight(static_cast<std::size_t>(plan.Q) + 1), tails(weight.size() + 1, 0.0);
  weight[0] = 1.0;
  for (int q = 1; q <= plan.Q; ++q) weight[q] = weight[q - 1] * x / q;
  for (int q = plan.Q; q >= 0; --q) tails[q] = tails[q + 1] + weight[q];

  std::vector<Eigen::VectorXcd> stages;
  Eigen::VectorXcd cur = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  cur[0] = 1.0;
  stages.push_back(cur);
  std::size_t stride = layout.num_paths();  // (M+1)^(Q-j) for register j
  for (int j = 1; j <= plan.Q; ++j) {
    stride /= M + 1;
    const double p_more = tails[j] / tails[j - 1];
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(cur.size());
    for (std::size_t p = 0; p < layout.num_paths(); ++p) {
      const cplx amp = cur[static_cast<Eigen::Index>(2 * p)];
      if (amp == 0.0) continue;
      // Registers 1..j-1 are all nonzero here unless the path already stopped.
      const auto regs = layout.registers(p);
      if (j >= 2 && regs[static_cast<std::size_t>(j - 2)] == 0) {
        next[static_cast<Eigen::Index>(2 * p)] += amp;
        continue;
      }
      next[static_cast<Eigen::Index>(2 * p)] += amp * std::sqrt(1.0 - p_more);
      for (std::size_t i = 0; i < M; ++i) {
        const double share = g.gamma_total > 0.0 ? g.gamma[i] / g.gamma_total : 0.0;
        next[static_cast<Eigen::Index>(2 * (p + (i + 1) * stride))] += amp * std::sqrt(p_more * share);
      }
    }
    cur = std::move(next);
    stages.push_back(cur);
  }
  Eigen::VectorXcd last = Eigen::VectorXcd::Zero(cur.size());
  for (std::size_t p = 0; p < layout.num_paths(); ++p) {
    const cplx amp = cur[static_cast<Eigen::Index>(2 * p)] / std::numbers::sqrt2;
    last[static_cast<Eigen::Index>(2 * p)] = amp;
    last[static_cast<Eigen::Index>(2 * p + 1)] = amp;
  }
  stages.push_back(last);
  return stages;
}

Eigen::VectorXcd prepare_psi0(const GammaBounds &g, const SegmentPlan &plan) {
  return psi0_cascade(g, plan).back();
}

SegmentPlan lcu_plan(const PmrHamiltonian &h, const GammaBounds &g, double t, double epsilon,
                     const LcuConfig &cfg) {
  SegmentPlan plan = plan_segments(h, g, t, epsilon);
  if (cfg.s_override) plan = with_target_s(plan, *cfg.s_override);
  return plan;
}

// ---------------------------------------------------------------------------
// LcuSegment

LcuSegment::LcuSegment(const PmrHamiltonian &h, const GammaBounds &g, const SegmentPlan &plan,
                       const LcuConfig &cfg)
    : h_(h), plan_(plan), layout_(plan.Q, h.num_terms()) {
  if (g.gamma.size() != h.num_terms()) throw InvalidArgument("Gamma bounds do not match term count");
  const std::size_t dim = h.dimension();
  const unsigned __int128 amplitudes = static_cast<unsigned __int128>(layout_.total_dim()) * dim;
  if (amplitudes > cfg.budget) {
    throw BudgetExceeded("composite state needs (M+1)^Q * 2 * 2^N = " +
                         std::to_string(static_cast<unsigned long long>(amplitudes)) +
                         " amplitudes (M=" + std::to_string(h.num_terms()) + ", Q=" +
                         std::to_string(plan.Q) + ", N=" + std::to_string(h.n_qubits()) +
                         "), budget is " + std::to_string(cfg.budget));
  }
  psi0_ = prepare_psi0(g, plan);
  householder_ = -psi0_;
  householder_[0] += 1.0;
  householder_norm2_ = householder_.squaredNorm();

  const std::size_t paths = layout_.num_paths();
  flips_.assign(paths, 0);
  valid_.assign(paths, 0);
  for (std::size_t p = 0; p < paths; ++p) {
    valid_[p] = layout_.is_valid(p);
    for (std::size_t v : layout_.registers(p)) {
      if (v != 0) flips_[p] ^= h.terms()[v - 1].p.x_mask();
    }
  }
  // Paths never visited have beta = 0: chi = 0, phi = pi/2.
  const auto [zero_plus, zero_minus] = phase_pair(0.0, std::numbers::pi / 2, cfg.phase_bits);
  phase_plus_.assign(paths * dim, zero_plus);
  phase_minus_.assign(paths * dim, zero_minus);
  PathKernel kernel(h, g, plan_, cfg.dd);
  const double dt = plan_.delta_t;
  for (BasisState z = 0; z < dim; ++z) {
    kernel.visit(z, [&](std::span<const std::size_t> idx, BasisState, cplx alpha_od) {
      const double scale = kernel.gamma_weight(idx) * dd_magnitude_bound(dt, static_cast<int>(idx.size()));
      double chi = 0.0, phi = 0.0;
      decompose_beta(idx.empty() ? cplx(1.0) : alpha_od / scale, chi, phi);
      const auto [plus, minus] = phase_pair(chi, phi, cfg.phase_bits);
      const std::size_t slot = layout_.path_index(idx) * dim + z;
      phase_plus_[slot] = plus;
      phase_minus_[slot] = minus;
    });
  }
  diag_phase_.resize(dim);
  for (BasisState z = 0; z < dim; ++z) diag_phase_[z] = std::polar(1.0, -dt * kernel.energy(z));
}

CompositeState LcuSegment::make_state(const StateVector &system) const {
  if (static_cast<std::size_t>(system.size()) != h_.dimension()) throw InvalidArgument("state dimension mismatch");
  return CompositeState::zero_ancilla(layout_, system);
}

void LcuSegment::check(const CompositeState &state) const {
  if (static_cast<std::size_t>(state.amplitudes.size()) != layout_.total_dim() * h_.dimension()) {
    throw InvalidArgument("composite state does not match the segment layout");
  }
}

void LcuSegment::apply_B(CompositeState &state) const {
  check(state);
  if (householder_norm2_ == 0.0) return;
  const auto d = static_cast<Eigen::Index>(h_.dimension());
  const auto a = static_cast<Eigen::Index>(layout_.total_dim());
  Eigen::Map<Eigen::MatrixXcd> x(state.amplitudes.data(), d, a);  // x(z, ancilla)
  const Eigen::VectorXcd proj = x * householder_.conjugate();
  x.noalias() -= (2.0 / householder_norm2_) * proj * householder_.transpose();
}

void LcuSegment::apply_U_C(CompositeState &state) const {
  check(state);
  const std::size_t dim = h_.dimension();
  Eigen::VectorXcd out = state.amplitudes;
  for (std::size_t p = 0; p < layout_.num_paths(); ++p) {
    if (!valid_[p]) continue;
    const Mask f = flips_[p];
    for (int k = 0; k < 2; ++k) {
      const std::size_t base = (2 * p + static_cast<std::size_t>(k)) * dim;
      const cplx *ph = (k == 0 ? phase_plus_.data() : phase_minus_.data()) + p * dim;
      for (std::size_t z = 0; z < dim; ++z) out[base + (z ^ f)] = ph[z] * state.amplitudes[base + z];
    }
  }
  state.amplitudes = std::move(out);
}

void LcuSegment::apply_U_C_inverse(CompositeState &state) const {
  check(state);
  const std::size_t dim = h_.dimension();
  Eigen::VectorXcd out = state.amplitudes;
  for (std::size_t p = 0; p < layout_.num_paths(); ++p) {
    if (!valid_[p]) continue;
    const Mask f = flips_[p];
    for (int k = 0; k < 2; ++k) {
      const std::size_t base = (2 * p + static_cast<std::size_t>(k)) * dim;
      const cplx *ph = (k == 0 ? phase_plus_.data() : phase_minus_.data()) + p * dim;
      for (std::size_t z = 0; z < dim; ++z) out[base + z] = std::conj(ph[z]) * state.amplitudes[base + (z ^ f)];
    }
  }
  state.amplitudes = std::move(out);
}

void LcuSegment::apply_reflection(CompositeState &state) {
  const auto d = static_cast<Eigen::Index>(state.system_dim());
  state.amplitudes.head(d) *= -1.0;
}

void LcuSegment::apply_W(CompositeState &state) const {
  apply_B(state);
  apply_U_C(state);
  apply_B(state);
}

void LcuSegment::apply_W_dagger(CompositeState &state) const {
  apply_B(state);
  apply_U_C_inverse(state);
  apply_B(state);
}

void LcuSegment::apply_A(CompositeState &state) const {
  apply_W(state);
  apply_reflection(state);
  apply_W_dagger(state);
  apply_reflection(state);
  apply_W(state);
  state.amplitudes *= -1.0;
}

void LcuSegment::apply_diagonal(CompositeState &state) const {
  check(state);
  const std::size_t dim = h_.dimension();
  for (std::size_t a = 0; a < layout_.total_dim(); ++a) {
    for (std::size_t z = 0; z < dim; ++z) state.amplitudes[a * dim + z] *= diag_phase_[z];
  }
}

SegmentDiagnostics LcuSegment::oaa_segment(CompositeState &state) const {
  apply_diagonal(state);
  // With Q = 0 the block is already unitary (s = 1); amplifying would flip its sign.
  if (plan_.Q == 0) {
    apply_W(state);
  } else {
    apply_A(state);
  }
  return SegmentDiagnostics{state.block_weight(0)};
}

StateVector evolve_lcu(const PmrHamiltonian &h, const GammaBounds &g, const StateVector &state,
                       double t, double epsilon, const LcuConfig &cfg, LcuDiagnostics *diagnostics) {
  if (static_cast<std::size_t>(state.size()) != h.dimension()) throw InvalidArgument("state dimension mismatch");
  const SegmentPlan plan = lcu_plan(h, g, t, epsilon, cfg);
  LcuDiagnostics diag;
  diag.plan = plan;
  const LcuSegment segment(h, g, plan, cfg);
  StateVector psi = state;
  for (int k = 0; k < plan.r; ++k) {
    CompositeState c = segment.make_state(psi);
    const double norm_in = psi.squaredNorm();
    const SegmentDiagnostics d = segment.oaa_segment(c);
    diag.zero_weight.push_back(d.zero_weight);
    diag.discarded_weight += norm_in - d.zero_weight;
    psi = c.block(0);
    const double n = psi.norm();
    if (n == 0.0) throw NumericalFailure("ancilla-zero block vanished");
    psi *= std::sqrt(norm_in) / n;
  }
  if (diagnostics) *diagnostics = std::move(diag);
  return psi;
}

}  // namespace odsim
