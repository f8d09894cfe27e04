// Copyright 2026 The ubm-toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: seeded Monte Carlo experiments with CSV output and
// golden-value checks of every simulation against its closed-form oracle.
//
// Exit codes: 0 success / within tolerance, 1 statistical failure,
// 2 invalid input.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ubm/experiments.hpp"
#include "ubm/result_table.hpp"
#include "ubm/ubm_sim.hpp"
#include "ubm/wick.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitInvalid = 2;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json cfg;
  in >> cfg;
  if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  return cfg;
}

// Flags override the config file: a JSON value is applied only when the
// option was not given on the command line.
template <typename T>
void merge(const CLI::Option* opt, const json& cfg, const char* key, T& var) {
  if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += ubm::ResultTable::fmt(v[i]);
  }
  return out;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "[ubmtool] wall time " << sec << " s\n";
  }
};

struct CommonOpts {
  std::uint64_t seed = 0;
  bool seed_set = false;
  long long reps = 0;
  int workers = 1;
  std::string out;
  std::string config_path;
};

void require_seed(const CommonOpts& c) {
  if (!c.seed_set) throw std::invalid_argument("--seed is mandatory (no wall-clock seeding)");
}

// ---------------------------------------------------------------------------
// wick eval

int cmd_wick_eval(const std::vector<int>& sigma) {
  const ubm::wick::MomentPolynomial poly = ubm::wick::wick_second_moment(sigma);
  std::cout << poly.poly_string() << " (valid for n >= " << poly.n_min << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// wick verify

int cmd_wick_verify(const std::vector<int>& sigma, int n, const CommonOpts& c) {
  require_seed(c);
  if (n < 1) throw std::invalid_argument("--n must be >= 1");
  const auto rows = ubm::run_wick_verify({sigma}, n, c.reps, c.seed, c.workers);

  ubm::ResultTable table({"sigma", "n", "n_min", "below_threshold", "exact", "mc_mean",
                          "mc_stderr", "z"});
  table.add_meta("command", "wick verify");
  table.add_meta("version", ubm::kToolVersion);
  table.add_meta("sigma", join_ints(sigma));
  table.add_meta("n", std::to_string(n));
  table.add_meta("reps", std::to_string(c.reps));
  table.add_meta("seed", std::to_string(c.seed));
  table.add_meta("workers", std::to_string(c.workers));

  bool ok = true;
  for (const auto& r : rows) {
    table.add_row({"\"" + join_ints(r.sigma) + "\"", table.fmt(r.n), table.fmt(r.n_min),
                   r.below_threshold ? "1" : "0",
                   r.below_threshold ? "" : table.fmt(r.exact), table.fmt(r.mc_mean),
                   table.fmt(r.mc_sem), r.below_threshold ? "" : table.fmt(r.z)});
    if (!r.below_threshold && std::abs(r.z) > 4.0) ok = false;
  }
  table.write_file(c.out);
  return ok ? kExitOk : kExitStatFail;
}

// ---------------------------------------------------------------------------
// ubm cov-check

int cmd_cov_check(int n, const std::vector<int>& modes, const std::vector<double>& t_grid,
                  double dt, const CommonOpts& c) {
  require_seed(c);
  if (n < 1) throw std::invalid_argument("--n must be >= 1");
  if (modes.empty()) throw std::invalid_argument("--k must list at least one mode");
  if (t_grid.empty()) throw std::invalid_argument("--t-grid must list at least one time");
  int k_max = 1;
  for (int k : modes) k_max = std::max(k_max, k);
  if (dt <= 0.0) {
    dt = ubm::SchemeParams::aligned_dt(t_grid, ubm::SchemeParams::default_dt(k_max));
  }

  const auto rows = ubm::run_cov_check(n, modes, t_grid, dt, c.reps, c.seed, c.workers);

  ubm::ResultTable table({"k", "t", "mc_re", "mc_im", "mc_stderr", "oracle", "z"});
  table.add_meta("command", "ubm cov-check");
  table.add_meta("version", ubm::kToolVersion);
  table.add_meta("n", std::to_string(n));
  table.add_meta("k", join_ints(modes));
  table.add_meta("t_grid", join_doubles(t_grid));
  table.add_meta("dt", table.fmt(dt));
  table.add_meta("reps", std::to_string(c.reps));
  table.add_meta("seed", std::to_string(c.seed));
  table.add_meta("workers", std::to_string(c.workers));

  bool ok = true;
  for (const auto& r : rows) {
    table.add_row({table.fmt(r.k), table.fmt(r.t), table.fmt(r.mc_re), table.fmt(r.mc_im),
                   table.fmt(r.sem), table.fmt(r.oracle), table.fmt(r.z)});
    if (std::abs(r.z) > 4.0) ok = false;
  }
  table.write_file(c.out);
  return ok ? kExitOk : kExitStatFail;
}

// ---------------------------------------------------------------------------
// field sample

int cmd_field_sample(const std::string& mode, int n, int K, std::vector<double> t_grid,
                     double dt, const CommonOpts& c) {
  require_seed(c);
  if (K < 1) throw std::invalid_argument("--K must be >= 1");
  if (t_grid.empty()) t_grid = {0.0, 0.25, 0.5, 0.75, 1.0};

  std::vector<ubm::FieldSampleRow> rows;
  if (mode == "limit") {
    rows = ubm::run_field_sample_limit(K, t_grid, c.reps, c.seed);
  } else if (mode == "finite") {
    if (n < 1) throw std::invalid_argument("finite mode requires --n >= 1");
    if (dt <= 0.0) {
      dt = ubm::SchemeParams::aligned_dt(t_grid, ubm::SchemeParams::default_dt(K));
    }
    rows = ubm::run_field_sample_finite(n, K, t_grid, dt, c.reps, c.seed);
  } else {
    throw std::invalid_argument("--mode must be 'finite' or 'limit'");
  }

  ubm::ResultTable table({"t", "k", "re", "im", "replica"});
  table.add_meta("command", "field sample");
  table.add_meta("version", ubm::kToolVersion);
  table.add_meta("mode", mode);
  if (mode == "finite") {
    table.add_meta("n", std::to_string(n));
    table.add_meta("dt", table.fmt(dt));
  }
  table.add_meta("K", std::to_string(K));
  table.add_meta("t_grid", join_doubles(t_grid));
  table.add_meta("reps", std::to_string(c.reps));
  table.add_meta("seed", std::to_string(c.seed));

  for (const auto& r : rows) {
    table.add_row({table.fmt(r.t), table.fmt(r.k), table.fmt(r.re), table.fmt(r.im),
                   table.fmt(r.replica)});
  }
  table.write_file(c.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sobolev scan

int cmd_sobolev_scan(const std::vector<int>& ns, double s, double eps, int K, double T,
                     int grid_points, double dt, const CommonOpts& c) {
  require_seed(c);
  if (ns.empty()) throw std::invalid_argument("--n must list at least one dimension");
  if (grid_points < 2) throw std::invalid_argument("--grid-points must be >= 2");
  if (dt <= 0.0) dt = T / (grid_points - 1);

  const auto rows =
      ubm::run_sobolev_scan(ns, s, eps, K, T, grid_points, dt, c.reps, c.seed, c.workers);

  ubm::ResultTable table({"n", "mc_mean", "mc_stderr", "exact", "z", "mode_tail_bound",
                          "warn_regime", "no_acceptance"});
  table.add_meta("command", "sobolev scan");
  table.add_meta("version", ubm::kToolVersion);
  table.add_meta("n", join_ints(ns));
  table.add_meta("s", table.fmt(s));
  table.add_meta("eps", table.fmt(eps));
  table.add_meta("K", std::to_string(K));
  table.add_meta("T", table.fmt(T));
  table.add_meta("grid_points", std::to_string(grid_points));
  table.add_meta("dt", table.fmt(rows.empty() ? dt : rows.front().dt));
  table.add_meta("reps", std::to_string(c.reps));
  table.add_meta("seed", std::to_string(c.seed));
  table.add_meta("workers", std::to_string(c.workers));

  bool ok = true;
  for (const auto& r : rows) {
    table.add_row({table.fmt(r.n), table.fmt(r.mc_mean), table.fmt(r.mc_sem),
                   table.fmt(r.exact), table.fmt(r.z), table.fmt(r.mode_tail_bound),
                   r.warn_regime ? "1" : "0", r.no_acceptance ? "1" : "0"});
    if (r.warn_regime) {
      std::cerr << "[ubmtool] warning: (s, eps) outside the convergence regime; "
                   "row computed anyway\n";
    }
    if (!r.no_acceptance && std::abs(r.z) > 4.0) ok = false;
  }
  table.write_file(c.out);
  return ok ? kExitOk : kExitStatFail;
}

// ---------------------------------------------------------------------------
// gff check

int cmd_gff_check(int K, int num_points, const CommonOpts& c) {
  require_seed(c);
  const auto rows = ubm::run_gff_check(K, num_points, c.seed);

  ubm::ResultTable table({"t", "theta", "tp", "thetap", "K", "series", "closed",
                          "abs_err", "tail_bound", "within"});
  table.add_meta("command", "gff check");
  table.add_meta("version", ubm::kToolVersion);
  table.add_meta("K", std::to_string(K));
  table.add_meta("num_points", std::to_string(num_points));
  table.add_meta("seed", std::to_string(c.seed));

  bool ok = true;
  for (const auto& r : rows) {
    table.add_row({table.fmt(r.t), table.fmt(r.theta), table.fmt(r.tp), table.fmt(r.thetap),
                   table.fmt(r.K), table.fmt(r.series), table.fmt(r.closed),
                   table.fmt(r.abs_err), table.fmt(r.tail_bound), r.within ? "1" : "0"});
    if (!r.within) ok = false;
  }
  table.write_file(c.out);
  return ok ? kExitOk : kExitStatFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unitary Brownian motion / log characteristic polynomial toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  std::vector<int> sigma;
  std::vector<int> modes;
  std::vector<int> ns;
  std::vector<double> t_grid;
  int n = 0;
  int K = 0;
  int grid_points = 512;
  int num_points = 20;
  double dt = 0.0;
  double T = 1.0;
  double s = 0.3;
  double eps = 0.4;
  std::string mode = "limit";

  // wick ------------------------------------------------------------------
  auto* wick = app.add_subcommand("wick", "exact trace-moment engine");
  wick->require_subcommand(1);

  auto* wick_eval = wick->add_subcommand("eval", "print the exact polynomial in n");
  auto* we_sigma = wick_eval->add_option("--sigma", sigma, "exponent list")->delimiter(',');
  auto* we_cfg = wick_eval->add_option("--config", common.config_path, "JSON config file");

  auto* wick_verify = wick->add_subcommand("verify", "exact value vs Monte Carlo");
  auto* wv_sigma = wick_verify->add_option("--sigma", sigma, "exponent list")->delimiter(',');
  auto* wv_n = wick_verify->add_option("--n", n, "dimension");
  auto* wv_reps = wick_verify->add_option("--reps", common.reps, "replicas");
  auto* wv_seed = wick_verify->add_option("--seed", common.seed, "master seed");
  auto* wv_workers = wick_verify->add_option("--workers", common.workers, "worker threads");
  auto* wv_out = wick_verify->add_option("--out", common.out, "CSV path (default stdout)");
  auto* wv_cfg = wick_verify->add_option("--config", common.config_path, "JSON config file");

  // ubm ---------------------------------------------------------------------
  auto* ubm_cmd = app.add_subcommand("ubm", "unitary Brownian motion simulation checks");
  ubm_cmd->require_subcommand(1);

  auto* cov = ubm_cmd->add_subcommand("cov-check", "trace autocovariance vs oracle");
  auto* cv_n = cov->add_option("--n", n, "dimension");
  auto* cv_k = cov->add_option("--k", modes, "trace powers")->delimiter(',');
  auto* cv_t = cov->add_option("--t-grid", t_grid, "lag times")->delimiter(',');
  auto* cv_dt = cov->add_option("--dt", dt, "step size (default from largest mode)");
  auto* cv_reps = cov->add_option("--reps", common.reps, "replicas");
  auto* cv_seed = cov->add_option("--seed", common.seed, "master seed");
  auto* cv_workers = cov->add_option("--workers", common.workers, "worker threads");
  auto* cv_out = cov->add_option("--out", common.out, "CSV path (default stdout)");
  auto* cv_cfg = cov->add_option("--config", common.config_path, "JSON config file");

  // field ---------------------------------------------------------------------
  auto* field = app.add_subcommand("field", "coefficient field sampling");
  field->require_subcommand(1);

  auto* fs = field->add_subcommand("sample", "emit coefficient paths as CSV");
  auto* fs_mode = fs->add_option("--mode", mode, "finite|limit");
  auto* fs_n = fs->add_option("--n", n, "dimension (finite mode)");
  auto* fs_K = fs->add_option("--K", K, "mode cutoff");
  auto* fs_t = fs->add_option("--t-grid", t_grid, "record times")->delimiter(',');
  auto* fs_dt = fs->add_option("--dt", dt, "step size (finite mode)");
  auto* fs_reps = fs->add_option("--reps", common.reps, "replicas");
  auto* fs_seed = fs->add_option("--seed", common.seed, "master seed");
  auto* fs_out = fs->add_option("--out", common.out, "CSV path (default stdout)");
  auto* fs_cfg = fs->add_option("--config", common.config_path, "JSON config file");

  // sobolev ---------------------------------------------------------------------
  auto* sobolev = app.add_subcommand("sobolev", "tensor norm scans");
  sobolev->require_subcommand(1);

  auto* scan = sobolev->add_subcommand("scan", "MC tensor norm vs exact decomposition");
  auto* sc_n = scan->add_option("--n", ns, "dimension list")->delimiter(',');
  auto* sc_s = scan->add_option("--s", s, "time regularity in (0,1)");
  auto* sc_eps = scan->add_option("--eps", eps, "circle regularity parameter");
  auto* sc_K = scan->add_option("--K", K, "mode cutoff");
  auto* sc_T = scan->add_option("--T", T, "time horizon");
  auto* sc_grid = scan->add_option("--grid-points", grid_points, "time grid points");
  auto* sc_dt = scan->add_option("--dt", dt, "step size (default: grid spacing)");
  auto* sc_reps = scan->add_option("--reps", common.reps, "replicas");
  auto* sc_seed = scan->add_option("--seed", common.seed, "master seed");
  auto* sc_workers = scan->add_option("--workers", common.workers, "worker threads");
  auto* sc_out = scan->add_option("--out", common.out, "CSV path (default stdout)");
  auto* sc_cfg = scan->add_option("--config", common.config_path, "JSON config file");

  // gff ---------------------------------------------------------------------
  auto* gff = app.add_subcommand("gff", "limit covariance checks");
  gff->require_subcommand(1);

  auto* gc = gff->add_subcommand("check", "series vs closed form with tail bounds");
  auto* gc_K = gc->add_option("--K", K, "series cutoff");
  auto* gc_pts = gc->add_option("--num-points", num_points, "random evaluation points");
  auto* gc_seed = gc->add_option("--seed", common.seed, "master seed");
  auto* gc_out = gc->add_option("--out", common.out, "CSV path (default stdout)");
  auto* gc_cfg = gc->add_option("--config", common.config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Timer timer;
    const json cfg = load_config(common.config_path);

    if (wick_eval->parsed()) {
      (void)we_cfg;
      merge(we_sigma, cfg, "sigma", sigma);
      if (sigma.empty()) throw std::invalid_argument("--sigma is required");
      return cmd_wick_eval(sigma);
    }
    if (wick_verify->parsed()) {
      (void)wv_cfg;
      merge(wv_sigma, cfg, "sigma", sigma);
      merge(wv_n, cfg, "n", n);
      merge(wv_reps, cfg, "reps", common.reps);
      merge(wv_seed, cfg, "seed", common.seed);
      merge(wv_workers, cfg, "workers", common.workers);
      merge(wv_out, cfg, "out", common.out);
      common.seed_set = wv_seed->count() > 0 || cfg.contains("seed");
      if (sigma.empty()) throw std::invalid_argument("--sigma is required");
      if (common.reps < 2) throw std::invalid_argument("--reps must be >= 2");
      return cmd_wick_verify(sigma, n, common);
    }
    if (cov->parsed()) {
      (void)cv_cfg;
      merge(cv_n, cfg, "n", n);
      merge(cv_k, cfg, "k", modes);
      merge(cv_t, cfg, "t_grid", t_grid);
      merge(cv_dt, cfg, "dt", dt);
      merge(cv_reps, cfg, "reps", common.reps);
      merge(cv_seed, cfg, "seed", common.seed);
      merge(cv_workers, cfg, "workers", common.workers);
      merge(cv_out, cfg, "out", common.out);
      common.seed_set = cv_seed->count() > 0 || cfg.contains("seed");
      if (common.reps < 2) throw std::invalid_argument("--reps must be >= 2");
      return cmd_cov_check(n, modes, t_grid, dt, common);
    }
    if (fs->parsed()) {
      (void)fs_cfg;
      merge(fs_mode, cfg, "mode", mode);
      merge(fs_n, cfg, "n", n);
      merge(fs_K, cfg, "K", K);
      merge(fs_t, cfg, "t_grid", t_grid);
      merge(fs_dt, cfg, "dt", dt);
      merge(fs_reps, cfg, "reps", common.reps);
      merge(fs_seed, cfg, "seed", common.seed);
      merge(fs_out, cfg, "out", common.out);
      common.seed_set = fs_seed->count() > 0 || cfg.contains("seed");
      if (common.reps < 1) throw std::invalid_argument("--reps must be >= 1");
      return cmd_field_sample(mode, n, K, t_grid, dt, common);
    }
    if (scan->parsed()) {
      (void)sc_cfg;
      merge(sc_n, cfg, "n", ns);
      merge(sc_s, cfg, "s", s);
      merge(sc_eps, cfg, "eps", eps);
      merge(sc_K, cfg, "K", K);
      merge(sc_T, cfg, "T", T);
      merge(sc_grid, cfg, "grid_points", grid_points);
      merge(sc_dt, cfg, "dt", dt);
      merge(sc_reps, cfg, "reps", common.reps);
      merge(sc_seed, cfg, "seed", common.seed);
      merge(sc_workers, cfg, "workers", common.workers);
      merge(sc_out, cfg, "out", common.out);
      common.seed_set = sc_seed->count() > 0 || cfg.contains("seed");
      if (K < 1) K = 256;
      if (common.reps < 2) throw std::invalid_argument("--reps must be >= 2");
      return cmd_sobolev_scan(ns, s, eps, K, T, grid_points, dt, common);
    }
    if (gc->parsed()) {
      (void)gc_cfg;
      merge(gc_K, cfg, "K", K);
      merge(gc_pts, cfg, "num_points", num_points);
      merge(gc_seed, cfg, "seed", common.seed);
      merge(gc_out, cfg, "out", common.out);
      common.seed_set = gc_seed->count() > 0 || cfg.contains("seed");
      if (K < 1) K = 200;
      return cmd_gff_check(K, num_points, common);
    }
    throw std::invalid_argument("no subcommand selected");
  } catch (const std::invalid_argument& e) {
    std::cerr << "[ubmtool] invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "[ubmtool] invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "[ubmtool] error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
