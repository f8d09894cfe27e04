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

#include "ubm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ubm/char_field.hpp"
#include "ubm/covariance_oracle.hpp"
#include "ubm/limit_field.hpp"
#include "ubm/mc.hpp"
#include "ubm/ubm_sim.hpp"

namespace ubm {

namespace {

double safe_z(double mean, double target, double sem) {
  if (sem > 0.0) return (mean - target) / sem;
  return mean == target ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<WickVerifyRow> run_wick_verify(const std::vector<std::vector<int>>& sigmas,
                                           int n, long long replicas,
                                           std::uint64_t seed, int workers) {
  const auto estimates = wick::wick_mc_batch(sigmas, n, replicas, seed, workers);
  std::vector<WickVerifyRow> rows;
  rows.reserve(sigmas.size());
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    WickVerifyRow row;
    row.sigma = sigmas[i];
    row.n = n;
    const wick::MomentPolynomial poly = wick::wick_second_moment(sigmas[i]);
    row.n_min = poly.n_min;
    row.below_threshold = n < poly.n_min;
    row.mc_mean = estimates[i].mean;
    row.mc_sem = estimates[i].sem;
    if (!row.below_threshold) {
      row.exact = poly.eval(n);
      row.z = safe_z(row.mc_mean, static_cast<double>(row.exact), row.mc_sem);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CovCheckRow> run_cov_check(int n, const std::vector<int>& modes,
                                       const std::vector<double>& t_grid, double dt,
                                       long long replicas, std::uint64_t seed,
                                       int workers) {
  if (modes.empty() || t_grid.empty()) {
    throw std::invalid_argument("run_cov_check: modes and t grid must be non-empty");
  }
  std::vector<double> record_times = t_grid;
  if (record_times.front() != 0.0) record_times.insert(record_times.begin(), 0.0);
  const SchemeParams params(dt, record_times.back(), record_times);

  std::vector<int> sorted_modes = modes;
  std::sort(sorted_modes.begin(), sorted_modes.end());

  const int n_pairs = static_cast<int>(modes.size() * t_grid.size());
  const std::size_t lag_offset = record_times.size() - t_grid.size();  // 0 or 1
  const McSummary summary = run_replicated(
      seed, replicas, 2 * n_pairs, workers,
      [&](long long, RngStream& rng, std::span<double> out) {
        const UbmTrajectory traj = simulate_trajectory(n, params, sorted_modes, rng);
        int s = 0;
        for (int k : modes) {
          for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
            const std::complex<double> v =
                traj.trace_at(k, static_cast<int>(ti + lag_offset)) *
                std::conj(traj.trace_at(k, 0));
            out[s++] = v.real();
            out[s++] = v.imag();
          }
        }
      });

  std::vector<CovCheckRow> rows;
  rows.reserve(n_pairs);
  int s = 0;
  for (int k : modes) {
    for (double t : t_grid) {
      CovCheckRow row;
      row.k = k;
      row.t = t;
      row.mc_re = summary.mean[s];
      row.sem = summary.sem[s];
      row.mc_im = summary.mean[s + 1];
      row.oracle = trace_autocov(k, n, t);
      row.z = safe_z(row.mc_re, row.oracle, row.sem);
      rows.push_back(row);
      s += 2;
    }
  }
  return rows;
}

std::vector<FieldSampleRow> run_field_sample_limit(int K, const std::vector<double>& times,
                                                   long long replicas, std::uint64_t seed) {
  std::vector<FieldSampleRow> rows;
  rows.reserve(static_cast<std::size_t>(replicas) * K * times.size());
  for (long long r = 0; r < replicas; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const OuEnsemble ens = sample_ou_paths(K, times, rng);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      for (int k = 1; k <= K; ++k) {
        const std::complex<double> a = ens.at(k, static_cast<int>(ti));
        rows.push_back({times[ti], k, a.real(), a.imag(), r});
      }
    }
  }
  return rows;
}

std::vector<FieldSampleRow> run_field_sample_finite(int n, int K,
                                                    const std::vector<double>& times,
                                                    double dt, long long replicas,
                                                    std::uint64_t seed) {
  const SchemeParams params(dt, times.back(), times);
  std::vector<int> modes;
  for (int k = 1; k <= K; ++k) modes.push_back(k);
  std::vector<FieldSampleRow> rows;
  rows.reserve(static_cast<std::size_t>(replicas) * K * times.size());
  for (long long r = 0; r < replicas; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const UbmTrajectory traj = simulate_trajectory(n, params, modes, rng);
    const FourierField field = field_from_trajectory(traj, K);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      for (int k = 1; k <= K; ++k) {
        const std::complex<double> c = field.at(k, static_cast<int>(ti));
        rows.push_back({times[ti], k, c.real(), c.imag(), r});
      }
    }
  }
  return rows;
}

std::vector<SobolevScanRow> run_sobolev_scan(const std::vector<int>& ns, double s,
                                             double eps, int K, double T,
                                             int grid_points, double dt_target,
                                             long long replicas, std::uint64_t seed,
                                             int workers) {
  const SobolevIndex idx(s, eps);
  const SchemeParams params = SchemeParams::uniform(T, grid_points, dt_target);
  std::vector<int> modes;
  for (int k = 1; k <= K; ++k) modes.push_back(k);

  std::vector<SobolevScanRow> rows;
  rows.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    // Distinct stream namespace per dimension: offset the seed so the rows
    // are independent while the whole scan stays reproducible.
    const std::uint64_t row_seed = seed + 0x9E3779B97F4A7C15ull * (i + 1);
    const McSummary summary = run_replicated(
        row_seed, replicas, 1, workers,
        [&](long long, RngStream& rng, std::span<double> out) {
          const UbmTrajectory traj = simulate_trajectory(n, params, modes, rng);
          const FourierField field = field_from_trajectory(traj, K);
          out[0] = tensor_norm_sq(DiscreteField::from_field(field), idx);
        });
    const ExpectedTensorNorm exact = expected_tensor_norm_exact(n, idx, K, T, grid_points);
    SobolevScanRow row;
    row.n = n;
    row.mc_mean = summary.mean[0];
    row.mc_sem = summary.sem[0];
    row.exact = exact.value;
    row.z = safe_z(row.mc_mean, row.exact, row.mc_sem);
    row.mode_tail_bound = exact.mode_tail_bound;
    row.dt = params.dt;
    row.warn_regime = !idx.valid_regime();
    row.no_acceptance = std::abs(eps - s) <= 1e-12;
    rows.push_back(row);
  }
  return rows;
}

std::vector<GffCheckRow> run_gff_check(int K, int num_points, std::uint64_t seed) {
  if (num_points < 1) throw std::invalid_argument("run_gff_check: num_points must be >= 1");
  RngStream rng(seed, 0);
  std::vector<GffCheckRow> rows;
  rows.reserve(num_points + 1);
  for (int i = 0; i < num_points; ++i) {
    GffCheckRow row;
    const double tau = 0.1 + 0.03 * rng.uniform01();
    row.t = 3.0 * rng.uniform01();
    row.tp = row.t + tau;
    row.theta = 6.283185307179586 * rng.uniform01();
    row.thetap = 6.283185307179586 * rng.uniform01();
    row.K = K;
    row.series = gff_covariance_series(K, row.t, row.theta, row.tp, row.thetap);
    row.closed = gff_covariance(row.t, row.theta, row.tp, row.thetap);
    row.abs_err = std::abs(row.series - row.closed);
    row.tail_bound = gff_series_tail_bound(K, tau);
    row.within = row.abs_err <= row.tail_bound;
    rows.push_back(row);
  }
  // Equal times, angles pi apart: value -log(2)/2, alternating tail 1/(2(K+1)).
  GffCheckRow alt;
  alt.t = alt.tp = 1.0;
  alt.theta = 0.25;
  alt.thetap = 0.25 + 3.14159265358979323846;
  alt.K = 1000000;
  alt.series = gff_covariance_series(static_cast<int>(alt.K), alt.t, alt.theta, alt.tp, alt.thetap);
  alt.closed = gff_covariance(alt.t, alt.theta, alt.tp, alt.thetap);
  alt.abs_err = std::abs(alt.series - alt.closed);
  alt.tail_bound = 1.0 / (2.0 * (alt.K + 1.0));
  alt.within = alt.abs_err <= alt.tail_bound;
  rows.push_back(alt);
  return rows;
}

}  // namespace ubm
