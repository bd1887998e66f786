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

#include "odsim/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "odsim/dense_oracle.hpp"
#include "odsim/divdiff.hpp"
#include "odsim/error.hpp"
#include "odsim/hamiltonian_io.hpp"
#include "odsim/lcu_oaa.hpp"
#include "odsim/models.hpp"
#include "odsim/offdiag_series.hpp"
#include "odsim/resources.hpp"

namespace odsim::cli {

namespace {

const std::vector<std::string> kCommands = {"evolve", "lcu", "divdiff", "resources", "compare", "models"};
const std::vector<std::string> kModels = {"zz_only", "zz_zx",     "zzz_zzx",
                                          "fermi_hubbard", "schwinger", "electronic_structure"};

class CheckFailure : public Error {
 public:
  using Error::Error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void render(const Table &t, Format f, std::ostream &out) {
  if (f == Format::csv) {
    auto line = [&](const std::vector<std::string> &cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
      out << '\n';
    };
    line(t.header);
    for (const auto &r : t.rows) line(r);
    return;
  }
  std::vector<std::size_t> width(t.header.size(), 0);
  auto grow = [&](const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  };
  grow(t.header);
  for (const auto &r : t.rows) grow(r);
  auto line = [&](const std::vector<std::string> &cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += "  ";
      s += cells[i];
      if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
    }
    out << s << '\n';
  };
  line(t.header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
  for (const auto &r : t.rows) line(r);
}

/// Writes to --output when given, otherwise to `out`.
void emit(const RunConfig &cfg, std::ostream &out, const std::function<void(std::ostream &)> &body) {
  if (cfg.output_path.empty()) {
    body(out);
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file '" + cfg.output_path + "'");
  body(f);
  if (!f) throw InvalidArgument("failed writing '" + cfg.output_path + "'");
}

/// Platform-independent draws: 53-bit uniforms and Box-Muller normals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return rad * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

StateVector initial_state(const RunConfig &cfg, std::size_t dim, Rng &rng) {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dim));
  if (cfg.initial == "random") {
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = cplx(rng.normal(), rng.normal());
    psi.normalize();
    return psi;
  }
  std::size_t idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stoull(cfg.initial, &used);
    if (used != cfg.initial.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception &) {
    throw InvalidArgument("--initial must be 'random' or a basis-state index");
  }
  if (idx >= dim) throw InvalidArgument("--initial basis index out of range");
  psi[static_cast<Eigen::Index>(idx)] = 1.0;
  return psi;
}

GammaMode parse_gamma_mode(const std::string &s) {
  if (s == "exact") return GammaMode::exact;
  if (s == "sum_abs") return GammaMode::sum_abs;
  throw InvalidArgument("unknown gamma mode '" + s + "'");
}

SpinCouplings make_couplings(const RunConfig &cfg, Table3Row row, Rng &rng) {
  const auto n = static_cast<std::size_t>(cfg.N);
  if (cfg.N < 1) throw InvalidArgument("--N must be positive");
  const bool two_body = row != Table3Row::zzz_zzx;
  const std::size_t size = two_body ? n * n : n * n * n;
  auto fill = [&](std::vector<double> &v) {
    v.assign(size, 1.0);
    if (cfg.couplings == "random") {
      for (auto &x : v) x = rng.uniform();
    } else if (cfg.couplings != "uniform" && cfg.couplings != "cancel") {
      throw InvalidArgument("unknown coupling pattern '" + cfg.couplings + "'");
    }
  };
  SpinCouplings c;
  c.N = cfg.N;
  if (two_body) {
    fill(c.J2);
    if (row == Table3Row::zz_zx) fill(c.J2_tilde);
  } else {
    fill(c.J3);
    fill(c.J3_tilde);
  }
  if (cfg.couplings == "cancel" && row != Table3Row::zz_only) {
    // Every column sum over the leading indices is zero.
    auto &jt = two_body ? c.J2_tilde : c.J3_tilde;
    const std::size_t lead = two_body ? n : n * n;
    for (std::size_t col = 0; col < n; ++col) jt[(lead - 1) * n + col] = -static_cast<double>(lead - 1);
  }
  return c;
}

PlaneWaveData random_plane_waves(int n_basis, Rng &rng) {
  PlaneWaveData data;
  const double box = 2.0;
  const double dk = 2.0 * std::numbers::pi / box;
  data.Omega = box * box * box;
  data.N_basis = n_basis;
  for (int x = -1; x <= 1; ++x) {
    for (int y = -1; y <= 1; ++y) {
      for (int z = -1; z <= 1; ++z) {
        if (x || y || z) data.k_vectors.push_back({dk * x, dk * y, dk * z});
      }
    }
  }
  for (int p = 0; p < n_basis; ++p) {
    data.r_points.push_back({rng.uniform(0, box), rng.uniform(0, box), rng.uniform(0, box)});
  }
  data.R_nuclei.push_back({box / 2, box / 2, box / 2});
  data.zeta.push_back(1.0);
  return data;
}

ModelInstance build_model(const RunConfig &cfg, const std::string &name, Rng &rng) {
  if (name == "zz_only" || name == "zz_zx" || name == "zzz_zzx") {
    const Table3Row row = parse_table3_row(name);
    return build_table3_model(row, make_couplings(cfg, row, rng), cfg.t);
  }
  if (name == "fermi_hubbard") {
    if (cfg.d != 1) throw InvalidArgument("the command line builds chains only (--d 1)");
    return build_fermi_hubbard(cfg.N, cfg.d, cfg.U, cfg.t_h, cfg.t);
  }
  if (name == "schwinger") return build_schwinger(cfg.N, cfg.mass, cfg.g, cfg.a, cfg.eps0, cfg.t);
  if (name == "electronic_structure") return build_electronic_structure(random_plane_waves(cfg.N, rng), cfg.t);
  throw InvalidArgument("unknown model '" + name + "'");
}

struct Loaded {
  std::vector<PauliString> paulis;
  PmrHamiltonian h;
  std::optional<ComparisonRecord> record;
  std::string label;
};

Loaded load(const RunConfig &cfg, Rng &rng) {
  if (!cfg.hamiltonian_path.empty() && !cfg.model.empty()) {
    throw InvalidArgument("give either --hamiltonian or --model, not both");
  }
  Loaded l;
  if (!cfg.hamiltonian_path.empty()) {
    l.paulis = read_pauli_file(cfg.hamiltonian_path);
    l.h = pauli_to_pmr(l.paulis);
    l.label = cfg.hamiltonian_path;
    return l;
  }
  if (cfg.model.empty()) throw InvalidArgument("a Hamiltonian is required (--hamiltonian FILE or --model NAME)");
  ModelInstance inst = build_model(cfg, cfg.model, rng);
  l.paulis = std::move(inst.paulis);
  l.h = std::move(inst.h);
  l.record = std::move(inst.record);
  l.label = cfg.model;
  return l;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void check_error(const RunConfig &cfg, double error, bool have_oracle) {
  if (!cfg.check) return;
  if (!have_oracle) throw InvalidArgument("--check needs a system small enough for the dense oracle");
  const double tol = cfg.check_tol.value_or(cfg.epsilon);
  if (!(error <= tol)) throw CheckFailure("error " + num(error) + " exceeds tolerance " + num(tol));
}

}  // namespace

int run_evolve(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  Rng rng(cfg.seed);
  const Loaded l = load(cfg, rng);
  const GammaBounds g = gamma_bounds(l.h, parse_gamma_mode(cfg.gamma_mode));
  const StateVector psi = initial_state(cfg, l.h.dimension(), rng);
  SeriesOptions opt;
  opt.dd.method = parse_dd_method(cfg.dd_method);
  if (cfg.budget) opt.budget = *cfg.budget;

  const auto start = std::chrono::steady_clock::now();
  SegmentPlan plan;
  const StateVector result = evolve(l.h, g, psi, cfg.t, cfg.epsilon, opt, &plan);
  err << "wall_time_s=" << num(seconds_since(start)) << '\n';

  const bool have_oracle = l.h.n_qubits() <= kDefaultDenseThreshold;
  double error = std::nan("");
  if (have_oracle) error = (result - DenseOracle(l.h).apply(cfg.t, psi)).norm();

  Table t{{"n_qubits", "M", "t", "epsilon", "T", "r", "Q", "delta_t", "tail_bound", "s", "norm", "error"}, {}};
  t.rows.push_back({num(l.h.n_qubits()), num(plan.M), num(cfg.t), num(cfg.epsilon), num(plan.T), num(plan.r),
                    num(plan.Q), num(plan.delta_t), num(plan.tail_bound), num(plan.s), num(result.norm()),
                    have_oracle ? num(error) : "n/a"});
  emit(cfg, out, [&](std::ostream &o) { render(t, cfg.format, o); });
  check_error(cfg, error, have_oracle);
  return kExitOk;
}

int run_lcu(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  Rng rng(cfg.seed);
  const Loaded l = load(cfg, rng);
  const GammaBounds g = gamma_bounds(l.h, parse_gamma_mode(cfg.gamma_mode));
  const StateVector psi = initial_state(cfg, l.h.dimension(), rng);
  LcuConfig lc;
  lc.dd.method = parse_dd_method(cfg.dd_method);
  lc.phase_bits = cfg.phase_bits;
  if (cfg.budget) lc.budget = *cfg.budget;

  const auto start = std::chrono::steady_clock::now();
  LcuDiagnostics diag;
  const StateVector result = evolve_lcu(l.h, g, psi, cfg.t, cfg.epsilon, lc, &diag);
  std::string quant = "n/a";
  if (cfg.phase_bits) {
    LcuConfig exact = lc;
    exact.phase_bits.reset();
    quant = num((result - evolve_lcu(l.h, g, psi, cfg.t, cfg.epsilon, exact)).norm());
  }
  err << "wall_time_s=" << num(seconds_since(start)) << '\n';

  const bool have_oracle = l.h.n_qubits() <= kDefaultDenseThreshold;
  double error = std::nan("");
  if (have_oracle) error = (result - DenseOracle(l.h).apply(cfg.t, psi)).norm();

  const auto [wmin, wmax] = std::minmax_element(diag.zero_weight.begin(), diag.zero_weight.end());
  const SegmentPlan &plan = diag.plan;
  Table t{{"n_qubits", "M", "t", "epsilon", "T", "r", "Q", "s", "zero_weight_min", "zero_weight_max",
           "discarded_weight", "quantization_error", "error"},
          {}};
  t.rows.push_back({num(l.h.n_qubits()), num(plan.M), num(cfg.t), num(cfg.epsilon), num(plan.T), num(plan.r),
                    num(plan.Q), num(plan.s), diag.zero_weight.empty() ? "n/a" : num(*wmin),
                    diag.zero_weight.empty() ? "n/a" : num(*wmax), num(diag.discarded_weight), quant,
                    have_oracle ? num(error) : "n/a"});
  emit(cfg, out, [&](std::ostream &o) { render(t, cfg.format, o); });
  if (!cfg.segments_path.empty()) {
    std::ofstream f(cfg.segments_path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open segments file '" + cfg.segments_path + "'");
    Table seg{{"segment", "zero_weight"}, {}};
    for (std::size_t i = 0; i < diag.zero_weight.size(); ++i) seg.rows.push_back({num(i), num(diag.zero_weight[i])});
    render(seg, Format::csv, f);
  }
  check_error(cfg, error, have_oracle);
  return kExitOk;
}

int run_divdiff(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  if (cfg.values.empty()) throw InvalidArgument("divdiff needs at least one input value");
  DdInputs in{cfg.values, cfg.t};
  const cplx oracle = dd_exp_taylor(in);
  auto deviation = [&](cplx v) {
    const double scale = std::abs(oracle);
    return scale > 0.0 ? std::abs(v - oracle) / scale : std::abs(v - oracle);
  };
  Table t{{"quantity", "re", "im", "deviation"}, {}};
  std::vector<cplx> ok;
  for (DdMethod m : {DdMethod::naive, DdMethod::taylor, DdMethod::pyramid, DdMethod::leibniz}) {
    DdConfig dc;
    dc.method = m;
    try {
      const cplx v = dd_exp(in, dc);
      ok.push_back(v);
      t.rows.push_back({to_string(m), num(v.real()), num(v.imag()), num(deviation(v))});
    } catch (const Error &e) {
      err << to_string(m) << ": " << e.what() << '\n';
      t.rows.push_back({to_string(m), "n/a", "n/a", "n/a"});
    }
  }
  double pairwise = 0.0;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    for (std::size_t j = i + 1; j < ok.size(); ++j) {
      const double scale = std::max({std::abs(ok[i]), std::abs(ok[j]), 1e-300});
      pairwise = std::max(pairwise, std::abs(ok[i] - ok[j]) / scale);
    }
  }
  t.rows.push_back({"max_pairwise_deviation", num(pairwise), "", ""});
  t.rows.push_back({"magnitude", num(std::abs(oracle)), "", ""});
  t.rows.push_back({"magnitude_bound", num(dd_magnitude_bound(cfg.t, in.q())), "", ""});
  t.rows.push_back({"seed_error", num(small_tau_error(in)), "", ""});
  emit(cfg, out, [&](std::ostream &o) { render(t, cfg.format, o); });
  return kExitOk;
}

namespace {

struct ConventionPlan {
  std::string name;
  SegmentPlan plan;
  double T_prime = 0.0;
  std::size_t L = 0;
  double gamma = 0.0;
};

/// The exact convention plans with the computed bounds; the quoted one
/// spreads T_quoted / |t| evenly over the terms and reports M_quoted.
std::vector<ConventionPlan> plans_for(const Loaded &l, const RunConfig &cfg, const std::string &which) {
  if (which != "paper" && which != "exact" && which != "both") {
    throw InvalidArgument("--convention must be paper, exact or both");
  }
  std::vector<ConventionPlan> out;
  const bool want_quoted = (which == "paper" || which == "both") && l.record.has_value();
  const bool want_exact = which == "exact" || which == "both" || !l.record.has_value();
  if (want_quoted) {
    const auto &rec = *l.record;
    const std::size_t m = l.h.num_terms();
    std::vector<double> gam(m, 0.0);
    if (m > 0 && cfg.t != 0.0) std::fill(gam.begin(), gam.end(), rec.T_quoted / std::abs(cfg.t) / m);
    SegmentPlan p = plan_segments(l.h, GammaBounds::from(gam), cfg.t, cfg.epsilon);
    p.M = rec.M_quoted;
    out.push_back({"paper_convention", p, rec.T_prime_quoted, rec.L_quoted, rec.gamma_quoted});
  }
  if (want_exact) {
    const GammaBounds g = gamma_bounds(l.h, parse_gamma_mode(cfg.gamma_mode));
    ConventionPlan cp{"exact_maxnorm", plan_segments(l.h, g, cfg.t, cfg.epsilon), 0.0, 0, 0.0};
    if (!g.gamma.empty()) cp.gamma = *std::max_element(g.gamma.begin(), g.gamma.end());
    if (l.record) {
      cp.T_prime = l.record->T_prime_exact;
      cp.L = l.record->L_exact;
    } else {
      for (const auto &p : l.paulis) {
        if (p.z_mask | p.x_mask | p.y_mask) {
          ++cp.L;
          cp.T_prime += std::abs(cfg.t * p.coefficient);
        }
      }
    }
    out.push_back(cp);
  }
  return out;
}

int model_size(const Loaded &l) { return l.record ? l.record->N : l.h.n_qubits(); }

}  // namespace

int run_resources(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  Rng rng(cfg.seed);
  const Loaded l = load(cfg, rng);
  const CostParams cp = CostParams::from_hamiltonian(l.h);
  Table t{{"model", "N", "convention", "gamma", "M", "T", "T_prime", "Q", "r", "unitary", "description",
           "gate_cost", "qubit_cost", "label"},
          {}};
  for (const auto &c : plans_for(l, cfg, cfg.convention.empty() ? "both" : cfg.convention)) {
    const ResourceEstimate e = resource_table(c.plan, cp, c.T_prime);
    auto row = [&](const std::string &unitary, const std::string &desc, std::int64_t gates, std::int64_t qubits) {
      t.rows.push_back({l.label, num(model_size(l)), c.name, num(c.gamma), num(c.plan.M), num(e.T), num(e.T_prime),
                        num(e.Q), num(e.r), unitary, desc, num(gates), num(qubits), e.constant_label});
    };
    for (const auto &r : e.rows) row(r.unitary, r.description, r.gate_cost, r.qubit_cost);
    row("total", "short-time evolution x r", e.gate_cost_total, e.qubit_cost);
  }
  emit(cfg, out, [&](std::ostream &o) { render(t, cfg.format, o); });
  return kExitOk;
}

int run_compare(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  std::vector<std::string> names;
  if (cfg.model == "all") {
    names = kModels;
  } else if (!cfg.model.empty()) {
    names = {cfg.model};
  }
  Table t{{"model", "N", "M", "L", "T", "T_prime", "Q", "r", "qubits", "gates_per_segment", "gates_total"}, {}};
  auto add = [&](const Loaded &l) {
    const CostParams cp = CostParams::from_hamiltonian(l.h);
    for (const auto &c : plans_for(l, cfg, cfg.convention.empty() ? "paper" : cfg.convention)) {
      const ResourceEstimate e = resource_table(c.plan, cp, c.T_prime);
      const std::string label = c.name == "exact_maxnorm" && l.record ? l.label + ":exact_maxnorm" : l.label;
      t.rows.push_back({label, num(model_size(l)), num(c.plan.M), num(c.L), num(e.T), num(e.T_prime), num(e.Q),
                        num(e.r), num(e.qubit_cost), num(e.gate_cost_segment), num(e.gate_cost_total)});
    }
    if (l.record && !l.record->note.empty()) err << l.label << ": " << l.record->note << '\n';
  };
  if (names.empty()) {
    Rng rng(cfg.seed);
    add(load(cfg, rng));
  } else {
    for (const auto &name : names) {
      // Each model draws from its own freshly seeded stream.
      Rng rng(cfg.seed);
      RunConfig one = cfg;
      one.model = name;
      add(load(one, rng));
    }
  }
  emit(cfg, out, [&](std::ostream &o) { render(t, cfg.format, o); });
  return kExitOk;
}

int run_models(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  if (cfg.model.empty()) throw InvalidArgument("models needs --model");
  Rng rng(cfg.seed);
  const ModelInstance inst = build_model(cfg, cfg.model, rng);
  std::ostringstream header;
  header << cfg.model << " N=" << cfg.N << " qubits=" << inst.h.n_qubits() << " M=" << inst.h.num_terms()
         << " seed=" << cfg.seed;
  emit(cfg, out, [&](std::ostream &o) { write_pauli_text(o, inst.paulis, header.str()); });
  return kExitOk;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  RunConfig cfg;
  CLI::App app{"Off-diagonal series Hamiltonian simulation emulator", "odsim"};
  app.set_config("--config", "", "key=value configuration file");
  std::string format = "csv";
  int phase_bits = 0;
  double check_tol = 0.0;
  std::uint64_t budget = 0;
  app.add_option("command", cfg.command, "evolve | lcu | divdiff | resources | compare | models")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("values", cfg.values, "divdiff input values");
  app.add_option("-H,--hamiltonian", cfg.hamiltonian_path, "Pauli-sum Hamiltonian file");
  app.add_option("--model", cfg.model, "built-in model, or 'all' for compare");
  app.add_option("--t", cfg.t, "evolution time");
  app.add_option("--epsilon", cfg.epsilon, "total error budget in (0, 1)");
  app.add_option("--dd-method", cfg.dd_method, "naive | taylor | pyramid | leibniz");
  auto *pb = app.add_option("--phase-bits", phase_bits, "phase register bits (LCU)")->check(CLI::Range(1, 64));
  app.add_option("--gamma-mode", cfg.gamma_mode, "exact | sum_abs");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--output", cfg.output_path, "write the table here instead of stdout");
  app.add_option("--segments", cfg.segments_path, "per-segment CSV (lcu)");
  app.add_flag("--check", cfg.check, "exit 4 if the oracle error exceeds the tolerance");
  auto *ct = app.add_option("--check-tol", check_tol, "tolerance for --check (default: epsilon)");
  app.add_option("--format", format, "csv | human")->check(CLI::IsMember({"csv", "human"}));
  app.add_option("--initial", cfg.initial, "'random' or a basis-state index");
  app.add_option("--convention", cfg.convention, "paper | exact | both");
  app.add_option("--N", cfg.N, "model size");
  app.add_option("--d", cfg.d, "lattice dimension");
  app.add_option("--U", cfg.U, "on-site repulsion");
  app.add_option("--t-h", cfg.t_h, "hopping strength");
  app.add_option("--mass", cfg.mass, "fermion mass");
  app.add_option("--g", cfg.g, "gauge coupling");
  app.add_option("--a", cfg.a, "lattice spacing");
  app.add_option("--eps0", cfg.eps0, "background field");
  app.add_option("--couplings", cfg.couplings, "random | uniform | cancel");
  auto *bud = app.add_option("--budget", budget, "work budget per segment");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  cfg.format = format == "human" ? Format::human : Format::csv;
  if (pb->count()) cfg.phase_bits = phase_bits;
  if (ct->count()) cfg.check_tol = check_tol;
  if (bud->count()) cfg.budget = budget;

  try {
    if (!cfg.values.empty() && cfg.command != "divdiff") throw InvalidArgument("unexpected positional arguments");
    if (cfg.command == "evolve") return run_evolve(cfg, out, err);
    if (cfg.command == "lcu") return run_lcu(cfg, out, err);
    if (cfg.command == "divdiff") return run_divdiff(cfg, out, err);
    if (cfg.command == "resources") return run_resources(cfg, out, err);
    if (cfg.command == "compare") return run_compare(cfg, out, err);
    return run_models(cfg, out, err);
  } catch (const odsim::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const BudgetExceeded &e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const CheckFailure &e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheck;
  } catch (const NumericalFailure &e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitCheck;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace odsim::cli
