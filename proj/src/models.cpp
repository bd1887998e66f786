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

#include "odsim/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <tuple>

#include "odsim/error.hpp"

namespace odsim {

namespace {

using std::numbers::pi;

PauliString make_pauli(int n, double c, std::initializer_list<std::pair<int, char>> ops) {
  PauliString p;
  p.n_qubits = n;
  p.coefficient = c;
  for (auto [q, letter] : ops) {
    const Mask bit = Mask{1} << q;
    switch (letter) {
      case 'X':
        p.x_mask |= bit;
        break;
      case 'Y':
        p.y_mask |= bit;
        break;
      case 'Z':
        p.z_mask ^= bit;
        break;
      default:
        break;
    }
  }
  return p;
}

/// X_lo Z...Z X_hi + Y_lo Z...Z Y_hi, scaled by c.
void add_hopping_pair(std::vector<PauliString> &out, int n, int lo, int hi, double c) {
  if (lo > hi) std::swap(lo, hi);
  Mask mid = 0;
  for (int k = lo + 1; k < hi; ++k) mid |= Mask{1} << k;
  PauliString xx = make_pauli(n, c, {{lo, 'X'}, {hi, 'X'}});
  xx.z_mask = mid;
  PauliString yy = make_pauli(n, c, {{lo, 'Y'}, {hi, 'Y'}});
  yy.z_mask = mid;
  out.push_back(xx);
  out.push_back(yy);
}

void add_diagonal(std::vector<PauliString> &out, int n, const DiagonalOperator &d) {
  for (const auto &t : d.terms()) {
    PauliString p;
    p.n_qubits = n;
    p.coefficient = t.coefficient.real();
    p.z_mask = t.z_mask;
    out.push_back(p);
  }
}

/// Sums identical strings and drops exact zeros; order of first appearance.
std::vector<PauliString> merge_paulis(const std::vector<PauliString> &in) {
  std::map<std::tuple<Mask, Mask, Mask>, std::size_t> slot;
  std::vector<PauliString> out;
  for (const auto &p : in) {
    auto key = std::make_tuple(p.z_mask, p.x_mask, p.y_mask);
    auto [it, inserted] = slot.try_emplace(key, out.size());
    if (inserted) {
      out.push_back(p);
    } else {
      out[it->second].coefficient += p.coefficient;
    }
  }
  std::erase_if(out, [](const PauliString &p) { return p.coefficient == 0.0; });
  return out;
}

ModelInstance finish(std::vector<PauliString> paulis, int n, ComparisonRecord rec, double t) {
  ModelInstance inst;
  inst.paulis = merge_paulis(paulis);
  if (inst.paulis.empty()) inst.paulis.push_back(make_pauli(n, 0.0, {}));
  inst.h = pauli_to_pmr(inst.paulis);
  inst.record = std::move(rec);
  fill_exact_fields(inst, t);
  return inst;
}

double dot(const std::array<double, 3> &a, const std::array<double, 3> &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<double, 3> diff(const std::array<double, 3> &a, const std::array<double, 3> &b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

}  // namespace

void fill_exact_fields(ModelInstance &inst, double t) {
  auto &rec = inst.record;
  rec.L_exact = 0;
  double coeff_sum = 0.0;
  for (const auto &p : inst.paulis) {
    if (p.z_mask == 0 && p.x_mask == 0 && p.y_mask == 0) continue;
    ++rec.L_exact;
    coeff_sum += std::abs(p.coefficient);
  }
  rec.T_prime_exact = std::abs(t) * coeff_sum;
  rec.M_exact = inst.h.num_terms();
  const GammaMode mode =
      inst.h.n_qubits() <= kDefaultEnumerationThreshold ? GammaMode::exact : GammaMode::sum_abs;
  const GammaBounds g = gamma_bounds(inst.h, mode);
  rec.T_exact = std::abs(t) * g.gamma_total;
  rec.gamma_exact = g.gamma.empty() ? 0.0 : *std::max_element(g.gamma.begin(), g.gamma.end());
}

Table3Row parse_table3_row(const std::string &name) {
  if (name == "zz_only") return Table3Row::zz_only;
  if (name == "zz_zx") return Table3Row::zz_zx;
  if (name == "zzz_zzx") return Table3Row::zzz_zzx;
  throw InvalidArgument("unknown spin model '" + name + "'");
}

std::string to_string(Table3Row row) {
  switch (row) {
    case Table3Row::zz_only:
      return "zz_only";
    case Table3Row::zz_zx:
      return "zz_zx";
    case Table3Row::zzz_zzx:
      return "zzz_zzx";
  }
  return "?";
}

ModelInstance build_table3_model(Table3Row row, const SpinCouplings &c, double t) {
  const int n = c.N;
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("spin model needs 1 <= N <= 62");
  const auto nn = static_cast<std::size_t>(n);
  auto need = [](const std::vector<double> &v, std::size_t size, const char *name) {
    if (v.size() != size) {
      throw InvalidArgument(std::string(name) + " must have " + std::to_string(size) + " entries");
    }
  };
  const double at = std::abs(t);
  std::vector<PauliString> paulis;
  ComparisonRecord rec;
  rec.model = to_string(row);
  rec.N = n;

  if (row == Table3Row::zz_only || row == Table3Row::zz_zx) {
    need(c.J2, nn * nn, "J2");
    double abs_j = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = c.J2[i * nn + j];
        abs_j += std::abs(v);
        if (i != j) paulis.push_back(make_pauli(n, v, {{i, 'Z'}, {j, 'Z'}}));
      }
    }
    if (row == Table3Row::zz_only) {
      rec.M_quoted = 0;
      rec.L_quoted = nn * nn;
      rec.T_quoted = 0.0;
      rec.T_prime_quoted = at * abs_j;
    } else {
      need(c.J2_tilde, nn * nn, "J2_tilde");
      double abs_jt = 0.0, col_sums = 0.0;
      for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) {
          const double v = c.J2_tilde[i * nn + j];
          col += v;
          abs_jt += std::abs(v);
          if (i != j) paulis.push_back(make_pauli(n, v, {{i, 'Z'}, {j, 'X'}}));
        }
        col_sums += std::abs(col);
      }
      rec.M_quoted = nn + 1;
      rec.L_quoted = 2 * nn * nn;
      rec.T_quoted = at * col_sums;
      rec.T_prime_quoted = at * (abs_j + abs_jt);
      rec.note = "quoted unitary count N+1 includes one slot beyond the N off-diagonal terms";
    }
  } else {
    need(c.J3, nn * nn * nn, "J3");
    need(c.J3_tilde, nn * nn * nn, "J3_tilde");
    double abs_sum = 0.0, col_sums = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const double v = c.J3[(i * nn + j) * nn + k];
          abs_sum += std::abs(v);
          if (i != j && j != k && i != k) paulis.push_back(make_pauli(n, v, {{i, 'Z'}, {j, 'Z'}, {k, 'Z'}}));
        }
      }
    }
    for (int k = 0; k < n; ++k) {
      double col = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double v = c.J3_tilde[(i * nn + j) * nn + k];
          col += v;
          abs_sum += std::abs(v);
          if (i != j && j != k && i != k) paulis.push_back(make_pauli(n, v, {{i, 'Z'}, {j, 'Z'}, {k, 'X'}}));
        }
      }
      col_sums += std::abs(col);
    }
    rec.M_quoted = nn;
    rec.L_quoted = 2 * nn * nn * nn;
    rec.T_quoted = at * col_sums;
    rec.T_prime_quoted = at * abs_sum;
  }
  return finish(std::move(paulis), n, std::move(rec), t);
}

std::vector<std::pair<int, int>> chain_edges(int n_sites) {
  if (n_sites < 2) throw InvalidArgument("a chain needs at least 2 sites");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n_sites; ++i) edges.emplace_back(i, i + 1);
  if (n_sites >= 3) edges.emplace_back(0, n_sites - 1);
  return edges;
}

ModelInstance build_fermi_hubbard(int n_sites, int d, double U, double t_h, double t,
                                  const std::vector<std::pair<int, int>> &edges) {
  if (n_sites < 2) throw InvalidArgument("Fermi-Hubbard model needs at least 2 sites");
  if (2 * n_sites > kMaxQubits) throw InvalidArgument("too many sites");
  if (d < 1) throw InvalidArgument("lattice dimension must be >= 1");
  const int n = 2 * n_sites;
  std::vector<PauliString> paulis;
  for (int j = 0; j < n_sites; ++j) {
    const int up = j, down = n_sites + j;
    paulis.push_back(make_pauli(n, U / 4, {}));
    paulis.push_back(make_pauli(n, U / 4, {{up, 'Z'}}));
    paulis.push_back(make_pauli(n, U / 4, {{down, 'Z'}}));
    paulis.push_back(make_pauli(n, U / 4, {{up, 'Z'}, {down, 'Z'}}));
  }
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i == j || i < 0 || j < 0 || i >= n_sites || j >= n_sites) {
      throw InvalidArgument("invalid edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    if (!seen.insert(std::minmax(i, j)).second) throw InvalidArgument("duplicate edge");
    // -t_h (a+_i a_j + h.c.) = (t_h / 2)(X Z..Z X + Y Z..Z Y) with |0> occupied.
    for (int sigma = 0; sigma < 2; ++sigma) {
      add_hopping_pair(paulis, n, sigma * n_sites + i, sigma * n_sites + j, t_h / 2);
    }
  }
  ComparisonRecord rec;
  rec.model = "fermi_hubbard";
  rec.N = n_sites;
  rec.M_quoted = static_cast<std::size_t>(n_sites) * static_cast<std::size_t>(d);
  rec.L_quoted = 3 * static_cast<std::size_t>(n_sites) + 2 * rec.M_quoted;
  rec.T_quoted = std::abs(t) * n_sites * d * std::abs(t_h);
  rec.T_prime_quoted = 3.0 * n_sites * std::abs(U) * std::abs(t) + 2.0 * rec.T_quoted;
  rec.gamma_quoted = std::abs(t_h);
  rec.note = "quoted counts take one term per bond; the built model has one per bond and spin";
  return finish(std::move(paulis), n, std::move(rec), t);
}

ModelInstance build_fermi_hubbard(int n_sites, int d, double U, double t_h, double t) {
  return build_fermi_hubbard(n_sites, d, U, t_h, t, chain_edges(n_sites));
}

ModelInstance build_schwinger(int N, double m, double g, double a, double eps0, double t) {
  if (N < 2) throw InvalidArgument("Schwinger model needs N >= 2");
  if (N > kMaxQubits) throw InvalidArgument("too many sites");
  if (a == 0.0 || g == 0.0) throw InvalidArgument("lattice spacing and coupling must be nonzero");
  const double hop = 1.0 / (2 * a * a * g * g);
  DiagonalOperator d0(N);
  for (int i = 1; i <= N; ++i) d0.add((i % 2 ? -1.0 : 1.0) * m / (a * g * g), Mask{1} << (i - 1));
  DiagonalOperator field = DiagonalOperator::identity(N, eps0);
  for (int i = 1; i < N; ++i) {
    // field = eps0 + (1/2) sum_{j<=i} (Z_j + (-1)^j)
    field.add(0.5, Mask{1} << (i - 1));
    field.add(0.5 * (i % 2 ? -1.0 : 1.0), 0);
    d0 += field * field;
  }
  d0.prune(kMergeTolerance);
  std::vector<PauliString> paulis;
  add_diagonal(paulis, N, d0);
  for (int i = 0; i + 1 < N; ++i) add_hopping_pair(paulis, N, i, i + 1, hop);

  ComparisonRecord rec;
  rec.model = "schwinger";
  rec.N = N;
  rec.M_quoted = static_cast<std::size_t>(N);
  rec.L_quoted = static_cast<std::size_t>(N) * static_cast<std::size_t>(N);
  rec.T_quoted = std::abs(t) * N * hop;
  rec.T_prime_quoted = std::abs(t) * (static_cast<double>(N) * N + std::abs(m) * N / std::abs(a * g * g) +
                                     N / (a * a * g * g));
  rec.gamma_quoted = hop;
  rec.note = "quoted L and T' are scaling forms with unit constants";
  return finish(std::move(paulis), N, std::move(rec), t);
}

void PlaneWaveData::validate() const {
  if (N_basis < 1) throw InvalidArgument("plane-wave data needs N_basis >= 1");
  if (r_points.size() != static_cast<std::size_t>(N_basis)) {
    throw InvalidArgument("need one r_point per basis function");
  }
  if (zeta.size() != R_nuclei.size()) throw InvalidArgument("need one charge per nucleus");
  if (!(Omega > 0.0)) throw InvalidArgument("cell volume must be positive");
}

ElectronicTimes electronic_structure_times(const PlaneWaveData &data, double t) {
  data.validate();
  const int n = data.N_basis;
  const double at = std::abs(t);
  double t_sum = 0.0, pair_part = 0.0, site_part = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      const auto r_qp = diff(data.r_points[q], data.r_points[p]);
      double s = 0.0;
      for (const auto &k : data.k_vectors) {
        const double k2 = dot(k, k);
        if (k2 == 0.0) continue;
        const double c = std::cos(dot(k, r_qp));
        s += k2 * c;
        pair_part += (pi / (data.Omega * k2) + k2 / (2.0 * n)) * std::abs(c);
      }
      t_sum += std::abs(s);
    }
  }
  for (int p = 0; p < n; ++p) {
    for (const auto &k : data.k_vectors) {
      const double k2 = dot(k, k);
      if (k2 == 0.0) continue;
      double nuc = 0.0;
      for (std::size_t j = 0; j < data.R_nuclei.size(); ++j) {
        nuc += data.zeta[j] * std::cos(dot(k, diff(data.R_nuclei[j], data.r_points[p]))) / k2;
      }
      site_part += std::abs(pi / (data.Omega * k2) - k2 / (4.0 * n) + 2.0 * pi / data.Omega * nuc);
    }
  }
  ElectronicTimes out;
  const auto nn = static_cast<std::size_t>(n);
  out.T = at * (n - 1) * t_sum;
  out.T_prime = at * (pair_part + 2.0 * site_part);
  out.M = 2 * (nn * nn - nn);
  out.L = 2 * nn + 6 * (nn * nn - nn);
  return out;
}

ModelInstance build_electronic_structure(const PlaneWaveData &data, double t) {
  data.validate();
  const int n_basis = data.N_basis;
  const int n = 2 * n_basis;
  if (n > kMaxQubits) throw InvalidArgument("too many basis functions");
  auto qubit = [n_basis](int p, int sigma) { return sigma * n_basis + p; };
  std::vector<PauliString> paulis;
  double identity = 0.0;
  std::vector<double> z_coeff(static_cast<std::size_t>(n_basis), 0.0);
  for (const auto &k : data.k_vectors) {
    const double k2 = dot(k, k);
    if (k2 == 0.0) continue;
    identity += k2 / 2 - pi * n_basis / (data.Omega * k2);
    for (int p = 0; p < n_basis; ++p) {
      double nuc = 0.0;
      for (std::size_t j = 0; j < data.R_nuclei.size(); ++j) {
        nuc += data.zeta[j] * std::cos(dot(k, diff(data.R_nuclei[j], data.r_points[p]))) / k2;
      }
      z_coeff[p] += pi / (data.Omega * k2) - k2 / (4.0 * n_basis) + 2.0 * pi / data.Omega * nuc;
    }
  }
  paulis.push_back(make_pauli(n, identity, {}));
  for (int p = 0; p < n_basis; ++p) {
    for (int sigma = 0; sigma < 2; ++sigma) paulis.push_back(make_pauli(n, z_coeff[p], {{qubit(p, sigma), 'Z'}}));
  }
  // Ordered pairs (p, sigma) != (q, sigma') of the density-density part.
  for (int p = 0; p < n_basis; ++p) {
    for (int q = 0; q < n_basis; ++q) {
      double s = 0.0;
      for (const auto &k : data.k_vectors) {
        const double k2 = dot(k, k);
        if (k2 != 0.0) s += std::cos(dot(k, diff(data.r_points[p], data.r_points[q]))) / k2;
      }
      for (int sp = 0; sp < 2; ++sp) {
        for (int sq = 0; sq < 2; ++sq) {
          if (p == q && sp == sq) continue;
          paulis.push_back(make_pauli(n, pi / (2 * data.Omega) * s, {{qubit(p, sp), 'Z'}, {qubit(q, sq), 'Z'}}));
        }
      }
    }
  }
  double gamma_quoted = 0.0;
  for (int p = 0; p < n_basis; ++p) {
    for (int q = 0; q < n_basis; ++q) {
      if (p == q) continue;
      double s = 0.0;
      for (const auto &k : data.k_vectors) {
        const double k2 = dot(k, k);
        if (k2 != 0.0) s += k2 * std::cos(dot(k, diff(data.r_points[q], data.r_points[p])));
      }
      gamma_quoted = std::max(gamma_quoted, std::abs(s) / (2.0 * n_basis));
      for (int sigma = 0; sigma < 2; ++sigma) {
        add_hopping_pair(paulis, n, qubit(p, sigma), qubit(q, sigma), s / (4.0 * n_basis));
      }
    }
  }
  const ElectronicTimes times = electronic_structure_times(data, t);
  ComparisonRecord rec;
  rec.model = "electronic_structure";
  rec.N = n_basis;
  rec.M_quoted = times.M;
  rec.L_quoted = times.L;
  rec.T_quoted = times.T;
  rec.T_prime_quoted = times.T_prime;
  rec.gamma_quoted = gamma_quoted;
  rec.note = "quoted T carries an (N-1) prefactor; T_exact uses the built Hamiltonian";
  return finish(std::move(paulis), n, std::move(rec), t);
}

}  // namespace odsim
