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
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace odsim {

using cplx = std::complex<double>;

/// Divided difference of f(x) = exp(-i t x) over `values`.
///
/// A negative tie_tolerance selects default_tie_tolerance(values).
struct DdInputs {
  std::vector<double> values;
  double t = 0.0;
  double tie_tolerance = -1.0;

  int q() const { return static_cast<int>(values.size()) - 1; }
};

enum class DdMethod { naive, taylor, pyramid, leibniz };

DdMethod parse_dd_method(const std::string &name);
std::string to_string(DdMethod m);

struct DdConfig {
  DdMethod method = DdMethod::taylor;
  /// Relative truncation tolerance of the Taylor sum.
  double series_tol = 1e-16;
  /// Number of doubling passes; negative means auto_doubling_depth.
  int doubling_depth = -1;
  double tie_tolerance = -1.0;
  /// Order of the short-time seed table. 0 is the pure mean-phase seed;
  /// p > 0 truncates its power series after degree p; negative picks the
  /// degree at which the remainder drops below 1e-17.
  int leibniz_seed_order = -1;
  /// See effective_energy_pyramid.
  double pyramid_cluster_width = 1.0;
};

/// 1e-9 * max(1, max |x|).
double default_tie_tolerance(std::span<const double> values);

/// Sum over j of f(x_j) / prod_{k != j} (x_j - x_k), evaluated in quad
/// precision. Throws RepeatedInputs when two inputs lie within the tie
/// tolerance.
cplx dd_exp_naive(const DdInputs &in);

/// Mean-shifted power series
///   exp(-i t xbar) sum_n (-i t)^(q+n) / (q+n)! h_n(x - xbar),
/// truncated with a rigorous remainder bound. Reference evaluator; accepts
/// repeated inputs.
cplx dd_exp_taylor(const DdInputs &in, double tol = 1e-16);

/// Complex E with exp(-i t E) (-i t)^q / q! equal to the divided difference,
/// built level by level over the sorted inputs in quad precision. Blocks with
/// |t| * (max - min) <= cluster_width are taken from their power series
/// instead of the recursion, which loses ~log10(2m / (|t| width)) digits per
/// level on narrow blocks. Pass 0 to recurse down to exact ties. Throws
/// InvalidArgument for t = 0 and ZeroDividedDifference when the divided
/// difference vanishes.
cplx effective_energy_pyramid(const DdInputs &in, double cluster_width = 1.0);

/// exp(-i t e) (-i t)^q / q!.
cplx dd_from_effective_energy(cplx e, double t, int q);

/// Smallest l >= 0 with |t| / 2^l * max_j |x_j - mean(x)| <= 1/16.
int auto_doubling_depth(std::span<const double> values, double t);

/// Upper-triangular table e_jk (j <= k) of normalized divided differences.
class LeibnizTable {
 public:
  explicit LeibnizTable(int size) : n_(size), data_(static_cast<std::size_t>(size) * size) {}
  int size() const { return n_; }
  cplx &at(int j, int k) { return data_[static_cast<std::size_t>(j) * n_ + k]; }
  const cplx &at(int j, int k) const { return data_[static_cast<std::size_t>(j) * n_ + k]; }

 private:
  int n_;
  std::vector<cplx> data_;
};

/// Called with pass 0 for the seed table and pass p after the p-th doubling.
using LeibnizObserver = std::function<void(int pass, const LeibnizTable &table)>;

/// Seeds e_jk at dt = t / 2^l and doubles l times via
///   e_jk(2 tau) = 2^-(k-j) sum_m C(k-j, m-j) e_jm(tau) e_mk(tau).
/// Inputs are shifted by their mean first. Requires q <= 64.
cplx dd_exp_leibniz(const DdInputs &in, const DdConfig &cfg = {},
                    const LeibnizObserver &observer = {});

/// |e_0q(t) - prod_m exp(-i t x_m / (q+1))| with the exact e_0q.
double small_tau_error(const DdInputs &in);

/// |dd_exp_taylor(in)|.
double dd_magnitude(const DdInputs &in);

/// |t|^q / q!.
double dd_magnitude_bound(double t, int q);

/// Dispatches on cfg.method.
cplx dd_exp(const DdInputs &in, const DdConfig &cfg = {});

}  // namespace odsim
