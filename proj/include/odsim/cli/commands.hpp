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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace odsim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitBudget = 3,
  kExitCheck = 4,
};

enum class Format { csv, human };

struct RunConfig {
  std::string command;
  std::string hamiltonian_path;
  std::string model;
  double t = 1.0;
  double epsilon = 1e-6;
  std::string dd_method = "taylor";
  std::optional<int> phase_bits;
  std::string gamma_mode = "exact";
  std::uint64_t seed = 42;
  std::string output_path;
  std::string segments_path;
  bool check = false;
  std::optional<double> check_tol;
  Format format = Format::csv;
  std::string initial = "random";
  std::string convention;  // empty picks the command default
  int N = 4;
  int d = 1;
  double U = 4.0;
  double t_h = 1.0;
  double mass = 1.0;
  double g = 1.0;
  double a = 1.0;
  double eps0 = 0.0;
  std::string couplings = "random";
  std::vector<double> values;  // divdiff inputs
  std::optional<std::uint64_t> budget;  // library default when unset
};

/// Parses argv and runs one subcommand. Tables go to `out` (or the file in
/// --output), diagnostics and wall time to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

int run_evolve(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int run_lcu(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int run_divdiff(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int run_resources(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int run_compare(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int run_models(const RunConfig &cfg, std::ostream &out, std::ostream &err);

}  // namespace odsim::cli
