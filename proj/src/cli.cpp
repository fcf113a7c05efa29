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

#include "brownmeasure/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "brownmeasure/csv.hpp"
#include "brownmeasure/density.hpp"
#include "brownmeasure/hjflow.hpp"
#include "brownmeasure/matsim.hpp"
#include "brownmeasure/region.hpp"
#include "brownmeasure/shadow.hpp"
#include "brownmeasure/verify.hpp"

namespace bm::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kSubcommands = {"region", "density", "biane", "shadow", "hj", "simulate", "verify"};

int resolved_steps(const RunConfig& c) {
  return c.steps > 0 ? c.steps : std::max(100, static_cast<int>(std::ceil(100.0 * c.t)));
}

std::ofstream open_out(const RunConfig& c, const std::string& name, std::string* path) {
  fs::create_directories(c.out);
  *path = (fs::path(c.out) / name).string();
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + *path);
  return f;
}

json to_json_obj(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["t"] = c.t;
  j["n"] = c.n;
  j["N"] = c.N;
  j["steps"] = resolved_steps(c);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["route"] = c.route;
  j["quick"] = c.quick;
  j["svg"] = c.svg;
  j["group"] = c.group;
  j["tol_dilate"] = c.tol_dilate;
  j["a0"] = c.a0;
  j["b0"] = c.b0;
  j["x0"] = c.x0;
  j["frac"] = c.frac;
  j["only"] = c.only;
  return j;
}

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

int cmd_region(const RunConfig& c, std::ostream& out) {
  const RegionBoundary b = sample_boundary(c.t, c.n);
  std::string path;
  auto f = open_out(c, "boundary.csv", &path);
  write_boundary_csv(f, b);
  out << "boundary: " << b.samples.size() << " samples, theta_max " << b.theta_max << " -> " << path << '\n';
  if (c.svg) {
    auto g = open_out(c, "boundary.svg", &path);
    write_boundary_svg(g, b);
    out << "outline -> " << path << '\n';
  }
  return 0;
}

int cmd_density(const RunConfig& c, std::ostream& out) {
  const DensityGrid g = density_grid(c.t, c.n, route_from_string(c.route));
  std::string path;
  auto f = open_out(c, "density.csv", &path);
  write_density_csv(f, g);
  out << "density: " << g.rows.size() << " rows -> " << path << '\n';
  auto m = open_out(c, "density.json", &path);
  write_density_json(m, g);
  const double mass = total_mass(c.t);
  out << "mass " << csv::fmt(mass) << " (|mass-1| = " << std::abs(mass - 1.0) << ")\n";
  return 0;
}

int cmd_biane(const RunConfig& c, std::ostream& out) {
  std::string path;
  auto f = open_out(c, "nu.csv", &path);
  write_nu_csv(f, c.t, c.n);
  out << "nu_t: " << c.n << " rows, phi_max " << phi_max(c.t) << ", mass " << csv::fmt(nu_mass(c.t)) << " -> " << path
      << '\n';
  return 0;
}

int cmd_shadow(const RunConfig& c, std::ostream& out) {
  const ShadowMap s = make_shadow_map(c.t, c.n);
  std::string path;
  auto f = open_out(c, "shadow.csv", &path);
  write_shadow_csv(f, s);
  out << "shadow: " << s.samples.size() << " rows, pushforward max error " << pushforward_check(c.t, c.n) << " -> "
      << path << '\n';
  return 0;
}

int cmd_hj(const RunConfig& c, std::ostream& out) {
  const cplx l0(c.a0, c.b0);
  const HJInit in = init_state(l0, c.x0);
  const HJConstants& k = in.constants;
  const Trajectory tr = integrate(in.state, k, c.frac * k.t_star, k.t_star / 4096.0);
  std::string path;
  auto f = open_out(c, "trajectory.csv", &path);
  write_trajectory_csv(f, tr);
  out << "trajectory: " << tr.states.size() << " states to t = " << tr.states.back().t << " -> " << path << '\n';
  auto g = open_out(c, "constants.json", &path);
  write_constants_json(g, k);
  out << "t_star " << csv::fmt(k.t_star) << " -> " << path << '\n';
  return 0;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  SimConfig s;
  s.N = c.N;
  s.t = c.t;
  s.steps = resolved_steps(c);
  s.seed = c.seed;
  s.samples = c.samples;
  s.group = c.group == "U" ? Group::U : Group::GL;
  validate(s);
  const EigenCloud cloud = simulate_cloud(s);
  std::string path;
  auto f = open_out(c, "eigenvalues.csv", &path);
  write_eigen_csv(f, cloud);
  out << "eigenvalues: " << cloud.eigenvalues.size() << " -> " << path << '\n';
  auto p = open_out(c, "provenance.json", &path);
  write_provenance_json(p, s);
  auto r = open_out(c, "report.json", &path);
  if (s.group == Group::GL) {
    const BrownReport rep = compare_to_brown(cloud, c.t, c.tol_dilate);
    write_report_json(r, rep, s);
    out << "inside_fraction " << rep.inside_fraction << ", ks_arg " << rep.ks_arg << ", ks_shadow " << rep.ks_shadow
        << ", n_outside " << rep.n_outside << ", flatness chi2 " << rep.flatness_chi2 << " (99% band "
        << rep.flatness_band99 << ")\n";
  } else {
    json j;
    j["ks_angle"] = unitary_ks(cloud, c.t);
    j["config"] = json::parse([&] {
      std::ostringstream os;
      write_provenance_json(os, s);
      return os.str();
    }());
    r << j.dump(2) << '\n';
    out << "ks_angle " << j["ks_angle"].get<double>() << '\n';
  }
  out << "report -> " << path << '\n';
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  SuiteOptions o;
  o.quick = c.quick;
  o.only = c.only;
  const auto rs = run_suite(o, [&](const CheckResult& r) {
    print_result_line(out, r);
    out.flush();
  });
  const auto npass = std::count_if(rs.begin(), rs.end(), [](const CheckResult& r) { return r.passed; });
  out << npass << "/" << rs.size() << " passed\n";
  return all_passed(rs) ? 0 : 1;
}

}  // namespace

void validate(const RunConfig& c) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end())
    throw ConfigError("unknown subcommand '" + c.subcommand + "'");
  if (!(c.t > 0.0) || !std::isfinite(c.t)) throw ConfigError("t must be positive and finite");
  if (c.n < 16) throw ConfigError("n must be at least 16");
  if (c.N < 2) throw ConfigError("N must be at least 2");
  if (c.samples < 1) throw ConfigError("samples must be at least 1");
  if (c.steps < 0) throw ConfigError("steps must be non-negative");
  if (c.group != "GL" && c.group != "U") throw ConfigError("group must be GL or U");
  if (!(c.tol_dilate >= 0.0)) throw ConfigError("tol_dilate must be non-negative");
  route_from_string(c.route);
  if (c.subcommand == "hj") {
    if (c.a0 == 0.0 && c.b0 == 0.0)
      throw ConfigError("lambda0 = 0 is excluded: the characteristic flow needs lambda0 != 0 (pick --a0/--b0)");
    if (!(c.x0 >= 0.0)) throw ConfigError("x0 must be non-negative");
    if (c.a0 == 1.0 && c.b0 == 0.0 && c.x0 == 0.0) throw ConfigError("(lambda0, x0) = (1, 0) has no finite lifetime");
    if (!(c.frac > 0.0 && c.frac < 1.0)) throw ConfigError("frac must lie in (0, 1)");
  }
  for (int id : c.only)
    if (id < 1 || id > kCriterionCount) throw ConfigError("no check with id " + std::to_string(id));
}

std::string to_json(const RunConfig& c) { return to_json_obj(c).dump(2); }

RunConfig merge_json(const std::string& text, RunConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  take(j, "subcommand", base.subcommand);
  take(j, "t", base.t);
  take(j, "n", base.n);
  take(j, "N", base.N);
  take(j, "steps", base.steps);
  take(j, "samples", base.samples);
  take(j, "seed", base.seed);
  take(j, "out", base.out);
  take(j, "route", base.route);
  take(j, "quick", base.quick);
  take(j, "svg", base.svg);
  take(j, "group", base.group);
  take(j, "tol_dilate", base.tol_dilate);
  take(j, "a0", base.a0);
  take(j, "b0", base.b0);
  take(j, "x0", base.x0);
  take(j, "frac", base.frac);
  take(j, "only", base.only);
  return base;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.subcommand == "region") return cmd_region(c, out);
    if (c.subcommand == "density") return cmd_density(c, out);
    if (c.subcommand == "biane") return cmd_biane(c, out);
    if (c.subcommand == "shadow") return cmd_shadow(c, out);
    if (c.subcommand == "hj") return cmd_hj(c, out);
    if (c.subcommand == "simulate") return cmd_simulate(c, out);
    return cmd_verify(c, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Brown measure of free multiplicative Brownian motion"};
  app.require_subcommand(1);

  struct Flags {
    std::optional<double> t, tol_dilate, a0, b0, x0, frac;
    std::optional<int> n, N, steps, samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out, route, group;
    std::vector<int> only;
    bool quick = false, svg = false, print_config = false;
    std::string config;
  } fl;

  for (const auto& name : kSubcommands) {
    CLI::App* s = app.add_subcommand(name);
    s->add_option("--t", fl.t, "time parameter t > 0");
    s->add_option("--n", fl.n, "grid size");
    s->add_option("--out", fl.out, "output directory");
    s->add_option("--config", fl.config, "JSON config file")->check(CLI::ExistingFile);
    s->add_flag("--print-config", fl.print_config, "print the effective config and exit");
    if (name == "region") s->add_flag("--svg", fl.svg, "also write an SVG outline");
    if (name == "density") s->add_option("--route", fl.route, "omega, theta_derivative or phi_jacobian");
    if (name == "hj") {
      s->add_option("--a0", fl.a0, "Re lambda0");
      s->add_option("--b0", fl.b0, "Im lambda0");
      s->add_option("--x0", fl.x0, "initial x >= 0");
      s->add_option("--frac", fl.frac, "integrate to frac * t_star");
    }
    if (name == "simulate") {
      s->add_option("--N", fl.N, "matrix size");
      s->add_option("--steps", fl.steps, "Euler-Maruyama steps");
      s->add_option("--samples", fl.samples, "independent realizations");
      s->add_option("--seed", fl.seed, "master seed");
      s->add_option("--group", fl.group, "GL or U");
      s->add_option("--tol-dilate", fl.tol_dilate, "relative dilation of Sigma_t for the inside fraction");
    }
    if (name == "verify") {
      s->add_flag("--quick", fl.quick, "shrink the Monte Carlo checks");
      s->add_option("--only", fl.only, "run only these check ids");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig c;
  try {
    if (!fl.config.empty()) {
      std::ifstream f(fl.config);
      std::stringstream ss;
      ss << f.rdbuf();
      c = merge_json(ss.str(), c);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (fl.t) c.t = *fl.t;
  if (fl.n) c.n = *fl.n;
  if (fl.N) c.N = *fl.N;
  if (fl.steps) c.steps = *fl.steps;
  if (fl.samples) c.samples = *fl.samples;
  if (fl.seed) c.seed = *fl.seed;
  if (fl.out) c.out = *fl.out;
  if (fl.route) c.route = *fl.route;
  if (fl.group) c.group = *fl.group;
  if (fl.tol_dilate) c.tol_dilate = *fl.tol_dilate;
  if (fl.a0) c.a0 = *fl.a0;
  if (fl.b0) c.b0 = *fl.b0;
  if (fl.x0) c.x0 = *fl.x0;
  if (fl.frac) c.frac = *fl.frac;
  if (fl.quick) c.quick = true;
  if (fl.svg) c.svg = true;
  if (!fl.only.empty()) c.only = fl.only;

  if (fl.print_config) {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return 2;
    }
    std::cout << to_json(c) << '\n';
    return 0;
  }
  return run(c, std::cout, std::cerr);
}

}  // namespace bm::cli
