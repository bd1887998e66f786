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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "odsim/cli/commands.hpp"
#include "odsim/hamiltonian_io.hpp"

namespace odsim::cli {
namespace {

namespace fs = std::filesystem;

const std::string kSample = std::string(ODSIM_DATA_DIR) + "/sample4.txt";
constexpr double kSampleGamma = 1.45;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "odsim");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split(const std::string &line, char sep = ',') {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

/// Rows of a CSV table keyed by header name.
std::vector<std::map<std::string, std::string>> table(const std::string &text) {
  const auto ls = lines(text);
  std::vector<std::map<std::string, std::string>> rows;
  if (ls.empty()) return rows;
  const auto header = split(ls[0]);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto cells = split(ls[i]);
    std::map<std::string, std::string> row;
    for (std::size_t j = 0; j < header.size() && j < cells.size(); ++j) row[header[j]] = cells[j];
    rows.push_back(std::move(row));
  }
  return rows;
}

double num(const std::map<std::string, std::string> &row, const std::string &key) {
  return std::stod(row.at(key));
}

fs::path temp_file(const std::string &name, const std::string &contents) {
  const fs::path p = fs::temp_directory_path() / ("odsim_cli_" + name);
  std::ofstream(p) << contents;
  return p;
}

TEST(CliEvolve, DiagonalOnlyIsExact) {
  const fs::path p = temp_file("diag.txt", "0.7 ZZI\n-1.2 IZZ\n0.4 ZII\n2.0 III\n");
  for (const char *t : {"0.3", "17.5"}) {
    const Result r = cli({"evolve", "-H", p.string(), "--t", t, "--epsilon", "1e-2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(num(table(r.out).at(0), "error"), 1e-13);
  }
}

TEST(CliEvolve, BundledSampleMeetsTolerance) {
  const std::string t = std::to_string(5.0 / kSampleGamma);
  const Result r = cli({"evolve", "-H", kSample, "--t", t, "--epsilon", "1e-6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = table(r.out).at(0);
  EXPECT_NEAR(num(row, "T"), 5.0, 1e-5);
  EXPECT_LE(num(row, "error"), 1e-6);
  EXPECT_NE(r.err.find("wall_time_s="), std::string::npos);
}

TEST(CliEvolve, SameSeedSameBytes) {
  const std::vector<std::string> args = {"evolve", "-H", kSample, "--t", "1.3", "--seed", "7"};
  const Result a = cli(args), b = cli(args);
  EXPECT_EQ(a.out, b.out);
  const Result c = cli({"evolve", "-H", kSample, "--t", "1.3", "--seed", "8"});
  EXPECT_NE(a.out, c.out);
}

TEST(CliEvolve, CheckAndOutputFile) {
  const fs::path out = fs::temp_directory_path() / "odsim_cli_evolve.csv";
  const Result r = cli({"evolve", "-H", kSample, "--t", "0.5", "--check", "--output", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_LE(num(table(text).at(0), "error"), 1e-6);
  const Result tight = cli({"evolve", "-H", kSample, "--t", "3", "--epsilon", "1e-2", "--check",
                            "--check-tol", "1e-15"});
  EXPECT_EQ(tight.code, kExitCheck);
}

TEST(CliLcu, AgreesWithSeriesAndReportsS) {
  const std::string t = std::to_string(2.0 / kSampleGamma);
  const double eps = 1e-5;
  const Result lcu = cli({"lcu", "-H", kSample, "--t", t, "--epsilon", "1e-5"});
  const Result ser = cli({"evolve", "-H", kSample, "--t", t, "--epsilon", "1e-5"});
  ASSERT_EQ(lcu.code, 0) << lcu.err;
  ASSERT_EQ(ser.code, 0) << ser.err;
  const auto a = table(lcu.out).at(0), b = table(ser.out).at(0);
  EXPECT_LE(std::abs(num(a, "error") - num(b, "error")), 5 * eps);
  EXPECT_LE(std::abs(num(a, "s") - 2.0), num(b, "tail_bound") + 1e-11);
  EXPECT_GT(num(a, "zero_weight_min"), 0.99);
}

TEST(CliLcu, PhaseBitsSweepOnSample) {
  const std::string t = std::to_string(2.0 / kSampleGamma);
  auto error_at = [&](const char *bits) {
    const Result r = cli({"lcu", "-H", kSample, "--t", t, "--epsilon", "1e-5", "--phase-bits", bits});
    EXPECT_EQ(r.code, 0) << r.err;
    return num(table(r.out).at(0), "error");
  };
  EXPECT_GT(error_at("8"), error_at("24"));
}

TEST(CliLcu, SegmentsFileAndBudget) {
  const fs::path seg = fs::temp_directory_path() / "odsim_cli_segments.csv";
  const Result r = cli({"lcu", "-H", kSample, "--t", "1", "--epsilon", "1e-3", "--segments", seg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(seg);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto rows = table(text);
  EXPECT_EQ(rows.size(), static_cast<std::size_t>(num(table(r.out).at(0), "r")));
  EXPECT_EQ(cli({"lcu", "-H", kSample, "--t", "1", "--budget", "100"}).code, kExitBudget);
  EXPECT_EQ(cli({"evolve", "-H", kSample, "--t", "50", "--budget", "10"}).code, kExitBudget);
}

TEST(CliDivdiff, RepeatedZerosAndNaiveRefusal) {
  const Result r = cli({"divdiff", "0", "0", "0", "--t", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::map<std::string, std::map<std::string, std::string>> rows;
  for (auto &row : table(r.out)) rows[row["quantity"]] = row;
  EXPECT_NEAR(num(rows["taylor"], "re"), -0.5, 1e-15);
  EXPECT_NEAR(num(rows["taylor"], "im"), 0.0, 1e-15);
  EXPECT_EQ(rows["naive"]["re"], "n/a");
  EXPECT_NEAR(num(rows["pyramid"], "re"), -0.5, 1e-14);
  EXPECT_NEAR(num(rows["leibniz"], "re"), -0.5, 1e-14);
}

TEST(CliDivdiff, SingleInputIsThePhase) {
  const Result r = cli({"divdiff", "0.8", "--t", "1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (auto &row : table(r.out)) {
    if (row["quantity"] == "naive" || row["quantity"] == "taylor" || row["quantity"] == "pyramid" ||
        row["quantity"] == "leibniz") {
      EXPECT_NEAR(num(row, "re"), std::cos(1.2), 1e-11);
      EXPECT_NEAR(num(row, "im"), -std::sin(1.2), 1e-11);
    }
  }
}

TEST(CliDivdiff, RandomSetsAgree) {
  const Result r = cli({"divdiff", "--t", "2", "--", "-0.5", "0.3", "1.2", "0.9", "-1.4"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (auto &row : table(r.out)) {
    if (row["quantity"] == "max_pairwise_deviation") EXPECT_LE(num(row, "re"), 1e-9);
  }
  EXPECT_EQ(cli({"divdiff", "--t", "1"}).code, kExitInput);
}

TEST(CliCompare, DiagonalSpinRow) {
  const Result r = cli({"compare", "--model", "zz_only", "--N", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).at(0), "model,N,M,L,T,T_prime,Q,r,qubits,gates_per_segment,gates_total");
  const auto row = table(r.out).at(0);
  EXPECT_EQ(row.at("M"), "0");
  EXPECT_EQ(row.at("T"), "0");
  EXPECT_GT(num(row, "T_prime"), 0.0);
}

TEST(CliCompare, AllModelsAndConventions) {
  const Result r = cli({"compare", "--model", "all", "--convention", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  bool exact = false, quoted = false;
  for (auto &row : table(r.out)) {
    if (row["model"].find(":exact_maxnorm") != std::string::npos) {
      exact = true;
    } else {
      quoted = true;
    }
  }
  EXPECT_TRUE(exact);
  EXPECT_TRUE(quoted);
  EXPECT_EQ(cli({"compare", "--model", "ising_3d"}).code, kExitInput);
}

TEST(CliModels, FermiHubbardRoundTrips) {
  const fs::path p = fs::temp_directory_path() / "odsim_cli_fh.txt";
  const Result r = cli({"models", "--model", "fermi_hubbard", "--N", "4", "--output", p.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto paulis = read_pauli_file(p.string());
  EXPECT_EQ(pauli_to_pmr(paulis).n_qubits(), 8);
  const Result ev = cli({"evolve", "-H", p.string(), "--t", "0.2", "--epsilon", "1e-4"});
  ASSERT_EQ(ev.code, 0) << ev.err;
  EXPECT_LE(num(table(ev.out).at(0), "error"), 1e-4);
}

TEST(CliResources, SchwingerReportsBothConventions) {
  const Result r = cli({"resources", "--model", "schwinger", "--N", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("paper_convention"), std::string::npos);
  EXPECT_NE(r.out.find("exact_maxnorm"), std::string::npos);
  EXPECT_NE(r.out.find("asymptotic-constant=1"), std::string::npos);
  const Result file = cli({"resources", "-H", kSample, "--t", "2", "--epsilon", "1e-3", "--format", "human"});
  EXPECT_EQ(file.code, 0) << file.err;
}

TEST(CliErrors, ExitCodes) {
  const fs::path bad = temp_file("bad.txt", "0.5 XZ\n1.0 XQ\n");
  const Result parse = cli({"evolve", "-H", bad.string()});
  EXPECT_EQ(parse.code, kExitInput);
  EXPECT_NE(parse.err.find("2"), std::string::npos);
  EXPECT_EQ(cli({"evolve", "-H", "/nonexistent/h.txt"}).code, kExitInput);
  EXPECT_EQ(cli({"evolve", "-H", kSample, "--epsilon", "2"}).code, kExitInput);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(cli({"evolve", "-H", kSample, "--phase-bits", "0"}).code, kExitInput);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(CliConfig, KeyValueFile) {
  const fs::path cfg = temp_file("run.cfg", "hamiltonian=" + kSample + "\nt=0.9\nseed=11\nepsilon=1e-5\n");
  const Result a = cli({"evolve", "--config", cfg.string()});
  const Result b = cli({"evolve", "-H", kSample, "--t", "0.9", "--seed", "11", "--epsilon", "1e-5"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

}  // namespace
}  // namespace odsim::cli
