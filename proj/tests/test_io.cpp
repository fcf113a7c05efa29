/* Copyright 2026 The brownmeasure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "brownmeasure/cli.hpp"
#include "brownmeasure/csv.hpp"
#include "brownmeasure/density.hpp"
#include "brownmeasure/shadow.hpp"

using namespace bm;
namespace fs = std::filesystem;

TEST_CASE("csv doubles round trip bit for bit") {
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; ++i) rows.push_back({U(eng) * std::pow(10.0, i % 40 - 20), U(eng), 1.0 / 3.0});
  rows.push_back({0.0, -0.0, 5e-324});
  std::stringstream ss;
  csv::write_header(ss, {"a", "b", "c"});
  for (const auto& r : rows) csv::write_row(ss, r);
  const auto tab = csv::read(ss);
  CHECK(tab.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(tab.rows.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < 3; ++j) CHECK(tab.rows[i][j] == rows[i][j]);
  CHECK(ss.str().find('\r') == std::string::npos);
}

TEST_CASE("csv rejects malformed input") {
  std::stringstream a("x,y\n1,2\n3\n");
  CHECK_THROWS(csv::read(a));
  std::stringstream b("x,y\n1,abc\n");
  CHECK_THROWS(csv::read(b));
  CHECK_THROWS(csv::read_file("/nonexistent/file.csv"));
}

TEST_CASE("density csv matches the in-memory grid") {
  const DensityGrid g = density_grid(2.0, 256);
  std::stringstream ss;
  write_density_csv(ss, g);
  const auto tab = csv::read(ss);
  REQUIRE(tab.header == std::vector<std::string>{"theta", "r_t", "w_t", "a_t"});
  REQUIRE(tab.rows.size() == 256);
  for (size_t k = 0; k < 256; ++k) {
    CHECK(tab.rows[k][0] == g.rows[k].theta);
    CHECK(tab.rows[k][1] == g.rows[k].r_t);
    CHECK(tab.rows[k][2] == g.rows[k].w_t);
    CHECK(tab.rows[k][3] == g.rows[k].a_t);
  }
}

TEST_CASE("config precedence: flags over json over defaults") {
  cli::RunConfig base;
  base.subcommand = "simulate";
  const cli::RunConfig j = cli::merge_json(R"({"t": 3.0, "N": 50, "seed": 11})", base);
  CHECK(j.t == 3.0);
  CHECK(j.N == 50);
  CHECK(j.seed == 11);
  CHECK(j.samples == base.samples);
  CHECK_THROWS_AS(cli::merge_json("{not json", base), ConfigError);
  CHECK_THROWS_AS(cli::merge_json(R"({"t": "two"})", base), ConfigError);
  CHECK_THROWS_AS(cli::merge_json("[1, 2]", base), ConfigError);
  const auto printed = nlohmann::json::parse(cli::to_json(j));
  CHECK(printed["steps"] == 300);
  CHECK(printed["N"] == 50);
}

TEST_CASE("config validation") {
  cli::RunConfig c;
  c.subcommand = "region";
  CHECK_NOTHROW(cli::validate(c));
  c.t = 0.0;
  CHECK_THROWS_AS(cli::validate(c), ConfigError);
  c.t = 1.0;
  c.subcommand = "bogus";
  CHECK_THROWS_AS(cli::validate(c), ConfigError);
  c.subcommand = "hj";
  c.a0 = 0.0;
  c.b0 = 0.0;
  CHECK_THROWS_AS(cli::validate(c), ConfigError);
  c.subcommand = "density";
  c.route = "fast";
  CHECK_THROWS_AS(cli::validate(c), ConfigError);
}

TEST_CASE("run writes artifacts and maps errors to exit codes") {
  const fs::path dir = fs::temp_directory_path() / "bm_io_test";
  fs::remove_all(dir);
  cli::RunConfig c;
  c.out = dir.string();
  c.t = 2.0;
  std::ostringstream out, err;

  c.subcommand = "density";
  c.n = 256;
  CHECK(cli::run(c, out, err) == 0);
  CHECK(csv::read_file((dir / "density.csv").string()).rows.size() == 256);
  CHECK(out.str().find("mass") != std::string::npos);

  c.subcommand = "region";
  c.svg = true;
  CHECK(cli::run(c, out, err) == 0);
  CHECK(fs::exists(dir / "boundary.csv"));
  CHECK(fs::exists(dir / "boundary.svg"));

  c.subcommand = "biane";
  CHECK(cli::run(c, out, err) == 0);
  c.subcommand = "shadow";
  CHECK(cli::run(c, out, err) == 0);
  c.subcommand = "hj";
  CHECK(cli::run(c, out, err) == 0);
  const auto tr = csv::read_file((dir / "trajectory.csv").string());
  CHECK(tr.rows.size() > 100);
  std::ifstream cj(dir / "constants.json");
  CHECK(nlohmann::json::parse(cj).contains("t_star"));

  c.subcommand = "simulate";
  c.N = 30;
  CHECK(cli::run(c, out, err) == 0);
  CHECK(csv::read_file((dir / "eigenvalues.csv").string()).rows.size() == 30);
  std::ifstream rj(dir / "report.json");
  const auto rep = nlohmann::json::parse(rj);
  for (const char* k : {"inside_fraction", "ks_arg", "ks_shadow", "n_outside", "config"}) CHECK(rep.contains(k));

  c.subcommand = "verify";
  c.only = {1, 5};
  std::ostringstream vout;
  CHECK(cli::run(c, vout, err) == 0);
  CHECK(vout.str().find("PASS criterion  1") != std::string::npos);

  c.subcommand = "hj";
  c.a0 = 0.0;
  c.b0 = 0.0;
  std::ostringstream e2;
  CHECK(cli::run(c, out, e2) == 2);
  CHECK(e2.str().find("lambda0 = 0") != std::string::npos);

  c.subcommand = "simulate";
  c.steps = 10;  // below ceil(100 t)
  CHECK(cli::run(c, out, err) == 2);

  // idempotent reruns
  c = cli::RunConfig{};
  c.out = dir.string();
  c.subcommand = "biane";
  c.t = 2.0;
  CHECK(cli::run(c, out, err) == 0);
  std::ifstream f1(dir / "nu.csv");
  std::stringstream s1;
  s1 << f1.rdbuf();
  CHECK(cli::run(c, out, err) == 0);
  std::ifstream f2(dir / "nu.csv");
  std::stringstream s2;
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  fs::remove_all(dir);
}
