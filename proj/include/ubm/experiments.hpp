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

#pragma once

#include <cstdint>
#include <vector>

#include "ubm/sobolev.hpp"
#include "ubm/wick.hpp"

namespace ubm {

/// Seeded Monte Carlo experiment drivers behind the CLI subcommands.  Every
/// run is a pure function of its configuration and master seed: replicas map
/// to fixed stream indices and reductions happen in ascending replica order,
/// so the worker count never changes a result.

struct WickVerifyRow {
  std::vector<int> sigma;
  int n = 0;
  int n_min = 0;
  bool below_threshold = false;
  long long exact = 0;  // meaningful only when !below_threshold
  double mc_mean = 0.0;
  double mc_sem = 0.0;
  double z = 0.0;
};

/// Exact polynomial vs Monte Carlo for each exponent vector, sharing the
/// (H, U) draws across words.
std::vector<WickVerifyRow> run_wick_verify(const std::vector<std::vector<int>>& sigmas,
                                           int n, long long replicas,
                                           std::uint64_t seed, int workers);

struct CovCheckRow {
  int k = 0;
  double t = 0.0;
  double mc_re = 0.0;
  double mc_im = 0.0;
  double sem = 0.0;
  double oracle = 0.0;
  double z = 0.0;
};

/// Empirical E[Tr U^k(t) conj Tr U^k(0)] from simulated paths against the
/// closed-form autocovariance, one row per (k, t).
std::vector<CovCheckRow> run_cov_check(int n, const std::vector<int>& modes,
                                       const std::vector<double>& t_grid, double dt,
                                       long long replicas, std::uint64_t seed,
                                       int workers);

struct FieldSampleRow {
  double t = 0.0;
  int k = 0;
  double re = 0.0;
  double im = 0.0;
  long long replica = 0;
};

/// Coefficient paths A_k(t) of the limit field (exact OU transitions).
std::vector<FieldSampleRow> run_field_sample_limit(int K, const std::vector<double>& times,
                                                   long long replicas, std::uint64_t seed);

/// Coefficient paths c_k(t) = -Tr(U^k(t))/k of the finite-n field.
std::vector<FieldSampleRow> run_field_sample_finite(int n, int K,
                                                    const std::vector<double>& times,
                                                    double dt, long long replicas,
                                                    std::uint64_t seed);

struct SobolevScanRow {
  int n = 0;
  double mc_mean = 0.0;
  double mc_sem = 0.0;
  double exact = 0.0;
  double z = 0.0;
  double mode_tail_bound = 0.0;
  double dt = 0.0;
  bool warn_regime = false;    // outside 0 < s < 1/2, eps > s
  bool no_acceptance = false;  // eps == s boundary, exploratory only
};

/// Monte Carlo mean of the discretized tensor norm of simulated coefficient
/// fields against the exact mode-wise decomposition on the same grid.
std::vector<SobolevScanRow> run_sobolev_scan(const std::vector<int>& ns, double s,
                                             double eps, int K, double T,
                                             int grid_points, double dt_target,
                                             long long replicas, std::uint64_t seed,
                                             int workers);

struct GffCheckRow {
  double t = 0.0;
  double theta = 0.0;
  double tp = 0.0;
  double thetap = 0.0;
  long long K = 0;
  double series = 0.0;
  double closed = 0.0;
  double abs_err = 0.0;
  double tail_bound = 0.0;
  bool within = false;
};

/// Truncated series vs closed form at seeded random points with time lags
/// in [0.1, 0.13] (where the geometric tail bound sits above double
/// roundoff), plus the equal-time angle-gap-pi row checked against the
/// alternating-series remainder at K = 10^6.
std::vector<GffCheckRow> run_gff_check(int K, int num_points, std::uint64_t seed);

}  // namespace ubm
