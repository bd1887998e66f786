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

#include "odsim/divdiff.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "odsim/compensated.hpp"
#include "odsim/error.hpp"

namespace odsim {

namespace {

constexpr cplx kI{0.0, 1.0};

// (-i)^n
cplx minus_i_pow(int n) {
  static constexpr cplx kTable[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return kTable[n & 3];
}

void check_nonempty(const DdInputs &in) {
  if (in.values.empty()) throw InvalidArgument("divided difference needs at least one input");
  for (double x : in.values) {
    if (!std::isfinite(x)) throw InvalidArgument("divided-difference input is not finite");
  }
  if (!std::isfinite(in.t)) throw InvalidArgument("divided-difference time is not finite");
}

/// Clamped to [min, max], so equal inputs give their common value exactly.
double mean_of(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return std::clamp(s.value() / static_cast<double>(v.size()), *lo, *hi);
}

double max_deviation(std::span<const double> v, double center) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - center));
  return m;
}

double tie_tolerance_of(const DdInputs &in) {
  return in.tie_tolerance >= 0.0 ? in.tie_tolerance : default_tie_tolerance(in.values);
}

// Sum_n (-i)^n h_n(u) q! / (q+n)!, the divided difference of exp(-i t x)
// divided by exp(-i t xbar) (-i t)^q / q!, with u = t (x - xbar).
//
// F_j[n] = h_n(u_0..u_j) j! / (n+j)! obeys
//   F_j[n] = (j F_{j-1}[n] + u_j F_j[n-1]) / (n+j),
// and |F_q[n]| <= rho^n / n! with rho = max |u|.
cplx normalized_series(std::span<const double> u, double tol, bool skip_constant = false) {
  const int q = static_cast<int>(u.size()) - 1;
  double rho = 0.0;
  for (double x : u) rho = std::max(rho, std::abs(x));
  std::vector<double> prev(u.size(), 1.0);  // F_j[0] = 1
  std::vector<double> cur(u.size());
  CompensatedComplexSum acc;
  if (!skip_constant) acc.add(1.0);
  double next_bound = rho;  // rho^(n+1) / (n+1)! after step n = 0
  const int max_terms = 10 * (q + static_cast<int>(std::ceil(rho)) + 20);
  for (int n = 1;; ++n) {
    // Remainder after including degree n - 1.
    if (n + 1 > rho) {
      double tail = next_bound / (1.0 - rho / (n + 1));
      const double floor = skip_constant ? 1e-300 : 1e-17;
      if (tail <= tol * std::abs(acc.value()) || tail <= floor) break;
    }
    if (n > max_terms) throw NumericalFailure("Taylor series for the divided difference did not converge");
    cur[0] = u[0] * prev[0] / n;
    for (int j = 1; j <= q; ++j) cur[j] = (j * cur[j - 1] + u[j] * prev[j]) / (n + j);
    acc.add(minus_i_pow(n) * cur[q]);
    std::swap(prev, cur);
    next_bound *= rho / (n + 1);
  }
  return acc.value();
}


using quad = __float128;

struct QuadComplex {
  quad re = 0, im = 0;
  friend QuadComplex operator+(QuadComplex a, QuadComplex b) { return {a.re + b.re, a.im + b.im}; }
  friend QuadComplex operator-(QuadComplex a, QuadComplex b) { return {a.re - b.re, a.im - b.im}; }
  friend QuadComplex operator*(QuadComplex a, quad s) { return {a.re * s, a.im * s}; }
};

QuadComplex times_i(QuadComplex z) { return {-z.im, z.re}; }

QuadComplex qsin(QuadComplex z) {
  return {sinq(z.re) * coshq(z.im), cosq(z.re) * sinhq(z.im)};
}

QuadComplex qlog(QuadComplex z) { return {logq(hypotq(z.re, z.im)), atan2q(z.im, z.re)}; }

// Effective energy of a narrow block, |t| * width <= O(1), from the
// normalized power series about the block mean. Same recurrence as
// normalized_series.
QuadComplex cluster_energy(std::span<const quad> x, quad t) {
  const int q = static_cast<int>(x.size()) - 1;
  quad mu = 0;
  for (quad v : x) mu += v;
  mu /= static_cast<quad>(x.size());
  std::vector<quad> u(x.size());
  quad rho = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    u[j] = t * (x[j] - mu);
    rho = fmaxq(rho, fabsq(u[j]));
  }
  std::vector<quad> prev(x.size(), 1), cur(x.size());
  quad acc[4] = {1, 0, 0, 0};  // coefficients of (-i)^n grouped by n mod 4
  quad bound = rho;
  for (int n = 1; n < 100000; ++n) {
    if (n + 1 > rho && bound / (1 - rho / (n + 1)) <= quad(1e-36)) break;
    cur[0] = u[0] * prev[0] / n;
    for (int j = 1; j <= q; ++j) cur[j] = (j * cur[j - 1] + u[j] * prev[j]) / (n + j);
    acc[n & 3] += cur[q];
    std::swap(prev, cur);
    bound *= rho / (n + 1);
  }
  // (-i)^0 = 1, (-i)^1 = -i, (-i)^2 = -1, (-i)^3 = i
  const QuadComplex series{acc[0] - acc[2], acc[3] - acc[1]};
  return QuadComplex{mu, 0} + times_i(qlog(series)) * (quad(1) / t);
}

}  // namespace

DdMethod parse_dd_method(const std::string &name) {
  if (name == "naive") return DdMethod::naive;
  if (name == "taylor") return DdMethod::taylor;
  if (name == "pyramid") return DdMethod::pyramid;
  if (name == "leibniz") return DdMethod::leibniz;
  throw InvalidArgument("unknown divided-difference method '" + name + "'");
}

std::string to_string(DdMethod m) {
  switch (m) {
    case DdMethod::naive:
      return "naive";
    case DdMethod::taylor:
      return "taylor";
    case DdMethod::pyramid:
      return "pyramid";
    case DdMethod::leibniz:
      return "leibniz";
  }
  return "?";
}

double default_tie_tolerance(std::span<const double> values) {
  double scale = 1.0;
  for (double x : values) scale = std::max(scale, std::abs(x));
  return 1e-9 * scale;
}

double dd_magnitude_bound(double t, int q) {
  double b = 1.0;
  for (int k = 1; k <= q; ++k) b *= std::abs(t) / k;
  return b;
}

cplx dd_from_effective_energy(cplx e, double t, int q) {
  cplx scale = minus_i_pow(q) * (t < 0 && (q & 1) ? -1.0 : 1.0) * dd_magnitude_bound(t, q);
  return std::exp(-kI * t * e) * scale;
}

cplx dd_exp_naive(const DdInputs &in) {
  check_nonempty(in);
  const auto &x = in.values;
  const double tie = tie_tolerance_of(in);
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 1; j < sorted.size(); ++j) {
    if (sorted[j] - sorted[j - 1] <= tie) {
      throw RepeatedInputs("inputs " + std::to_string(sorted[j - 1]) + " and " +
                           std::to_string(sorted[j]) + " are within the tie tolerance");
    }
  }
  __float128 re = 0, im = 0;
  const __float128 t = in.t;
  for (std::size_t j = 0; j < x.size(); ++j) {
    __float128 denom = 1;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k != j) denom *= static_cast<__float128>(x[j]) - static_cast<__float128>(x[k]);
    }
    __float128 arg = t * static_cast<__float128>(x[j]);
    re += cosq(arg) / denom;
    im -= sinq(arg) / denom;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

cplx dd_exp_taylor(const DdInputs &in, double tol) {
  check_nonempty(in);
  if (!(tol > 0.0)) throw InvalidArgument("series tolerance must be positive");
  const int q = in.q();
  if (in.t == 0.0) return q == 0 ? 1.0 : 0.0;
  const double xbar = mean_of(in.values);
  std::vector<double> u(in.values.size());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = in.t * (in.values[j] - xbar);
  cplx series = normalized_series(u, tol);
  return dd_from_effective_energy(xbar, in.t, q) * series;
}

cplx effective_energy_pyramid(const DdInputs &in, double cluster_width) {
  check_nonempty(in);
  if (in.t == 0.0) throw InvalidArgument("effective energy is undefined at t = 0");
  const quad t = in.t;
  const double tie = tie_tolerance_of(in);
  std::vector<double> sorted = in.values;
  std::sort(sorted.begin(), sorted.end());
  const double xbar = mean_of(sorted);
  std::vector<quad> x(sorted.size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = static_cast<quad>(sorted[j]) - xbar;
  const int n = static_cast<int>(x.size());
  const quad abs_t = fabsq(t);

  // level[j] holds E over x[j .. j + m].
  std::vector<QuadComplex> level(x.size());
  for (int j = 0; j < n; ++j) level[j] = {x[j], 0};
  for (int m = 1; m < n; ++m) {
    for (int j = 0; j + m < n; ++j) {
      const quad width = x[j + m] - x[j];
      if (width <= tie) {
        level[j] = (level[j] + level[j + 1]) * quad(0.5);
        continue;
      }
      if (abs_t * width <= cluster_width) {
        level[j] = cluster_energy(std::span<const quad>(x).subspan(j, m + 1), t);
        continue;
      }
      const QuadComplex mid = (level[j] + level[j + 1]) * quad(0.5);
      const QuadComplex half = (level[j + 1] - level[j]) * quad(0.5);
      const QuadComplex ratio = qsin(half * t) * (quad(2 * m) / (t * width));
      if (ratio.re == 0 && ratio.im == 0) {
        throw ZeroDividedDifference("divided difference vanishes; log undefined");
      }
      level[j] = mid + times_i(qlog(ratio)) * (quad(1) / t);
    }
  }
  const cplx e{static_cast<double>(level[0].re + xbar), static_cast<double>(level[0].im)};
  if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
    throw NumericalFailure("effective-energy recursion overflowed");
  }
  return e;
}

int auto_doubling_depth(std::span<const double> values, double t) {
  if (values.empty()) return 0;
  const double spread = std::abs(t) * max_deviation(values, mean_of(values));
  int l = 0;
  while (spread / std::ldexp(1.0, l) > 1.0 / 16 && l < 1000) ++l;
  return l;
}

cplx dd_exp_leibniz(const DdInputs &in, const DdConfig &cfg, const LeibnizObserver &observer) {
  check_nonempty(in);
  const int q = in.q();
  if (q > 64) throw InvalidArgument("Leibniz doubling supports at most 65 inputs");
  if (in.t == 0.0) return q == 0 ? 1.0 : 0.0;
  const double xbar = mean_of(in.values);
  std::vector<double> y(in.values.size());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = in.values[j] - xbar;
  const int l = cfg.doubling_depth >= 0 ? cfg.doubling_depth : auto_doubling_depth(in.values, in.t);
  const double tau = std::ldexp(in.t, -l);
  const int n = q + 1;

  LeibnizTable table(n);
  if (cfg.leibniz_seed_order == 0) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int k = j; k < n; ++k) {
        sum += y[k];
        table.at(j, k) = std::exp(-kI * tau * sum / static_cast<double>(k - j + 1));
      }
    }
  } else {
    // e_jk(tau) = sum_p (-i tau)^p h_p(y_j..y_k) (k-j)! / (k-j+p)!, using the
    // same normalized recurrence as the reference series, row by row.
    double rho = 0.0;
    for (double v : y) rho = std::max(rho, std::abs(tau * v));
    int order = cfg.leibniz_seed_order;
    if (order < 0) {
      order = 0;
      double b = 1.0;
      while (b > 1e-17 && order < 200) {
        ++order;
        b *= rho / order;
      }
    }
    for (int j = 0; j < n; ++j) {
      const int len = n - j;
      std::vector<double> prev(len, 1.0), cur(len);
      std::vector<CompensatedComplexSum> acc(len);
      for (auto &a : acc) a.add(1.0);
      for (int p = 1; p <= order; ++p) {
        cur[0] = tau * y[j] * prev[0] / p;
        for (int d = 1; d < len; ++d) cur[d] = (d * cur[d - 1] + tau * y[j + d] * prev[d]) / (p + d);
        for (int d = 0; d < len; ++d) acc[d].add(minus_i_pow(p) * cur[d]);
        std::swap(prev, cur);
      }
      for (int d = 0; d < len; ++d) table.at(j, j + d) = acc[d].value();
    }
  }
  if (observer) observer(0, table);

  // weight[d][m] = 2^-d C(d, m)
  std::vector<std::vector<double>> weight(n);
  for (int d = 0; d < n; ++d) {
    weight[d].assign(d + 1, 0.0);
    weight[d][0] = std::ldexp(1.0, -d);
    for (int m = 1; m <= d; ++m) weight[d][m] = weight[d][m - 1] * (d - m + 1) / m;
  }
  LeibnizTable next(n);
  for (int pass = 1; pass <= l; ++pass) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        cplx s = 0.0;
        for (int m = j; m <= k; ++m) s += weight[k - j][m - j] * table.at(j, m) * table.at(m, k);
        next.at(j, k) = s;
      }
    }
    std::swap(table, next);
    if (observer) observer(pass, table);
  }
  return dd_from_effective_energy(xbar, in.t, q) * table.at(0, q);
}

double small_tau_error(const DdInputs &in) {
  check_nonempty(in);
  if (in.t == 0.0) return 0.0;
  // e_0q(t) exp(i t xbar) - 1 is the normalized series without its constant term.
  const double xbar = mean_of(in.values);
  std::vector<double> u(in.values.size());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = in.t * (in.values[j] - xbar);
  return std::abs(normalized_series(u, 1e-16, /*skip_constant=*/true));
}

double dd_magnitude(const DdInputs &in) { return std::abs(dd_exp_taylor(in)); }

cplx dd_exp(const DdInputs &in, const DdConfig &cfg) {
  DdInputs local = in;
  if (local.tie_tolerance < 0.0 && cfg.tie_tolerance >= 0.0) local.tie_tolerance = cfg.tie_tolerance;
  switch (cfg.method) {
    case DdMethod::naive:
      return dd_exp_naive(local);
    case DdMethod::taylor:
      return dd_exp_taylor(local, cfg.series_tol);
    case DdMethod::pyramid:
      if (local.t == 0.0) return local.q() == 0 ? 1.0 : 0.0;
      return dd_from_effective_energy(effective_energy_pyramid(local, cfg.pyramid_cluster_width), local.t,
                                      local.q());
    case DdMethod::leibniz:
      return dd_exp_leibniz(local, cfg);
  }
  return 0.0;
}

}  // namespace odsim
