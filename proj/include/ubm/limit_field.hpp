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

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "ubm/rng.hpp"

namespace ubm {

/// Stationary complex Ornstein-Uhlenbeck coefficient paths A_k(t_i),
/// 1 <= k <= K: mode k reverts at rate k, driven by a standard complex
/// Brownian motion, so that E|A_k|^2 = 1/k and
/// E[A_k(t) conj(A_k(s))] = e^{-k|t-s|}/k.
struct OuEnsemble {
  int K = 0;
  std::vector<double> times;
  Eigen::MatrixXcd paths;  // (K, times.size()); row k-1 holds A_k

  std::complex<double> at(int k, int time_idx) const { return paths(k - 1, time_idx); }
};

/// Exact-transition sampling: A_k(0) has independent N(0, 1/(2k)) parts and
///   A_k(t + d) = e^{-k d} A_k(t) + eta,
/// with eta complex Gaussian of per-component variance (1 - e^{-2 k d})/(2k).
/// No discretization error at any grid spacing.
OuEnsemble sample_ou_paths(int K, std::span<const double> times, RngStream& rng);

/// Covariance of the limit field on the cylinder:
///   (1/2) log( max(e^{-t}, e^{-t'}) / |e^{-t} e^{i theta} - e^{-t'} e^{i theta'}| ),
/// computed stably as -1/2 log|1 - r e^{i phi}| with r = e^{-|t-t'|} and
/// phi = theta - theta'.  Coincident points are rejected (the variance
/// diverges; the field has no pointwise values).
double gff_covariance(double t, double theta, double tp, double thetap);

/// Partial sum sum_{k<=K} e^{-k|t-t'|} cos(k (theta-theta')) / (2k).
double gff_covariance_series(int K, double t, double theta, double tp, double thetap);

/// Geometric tail bound for the series when |t - t'| = tau > 0:
///   e^{-(K+1) tau} / (2 (K+1) (1 - e^{-tau})).
double gff_series_tail_bound(int K, double tau);

/// Analytic coefficient autocovariance E[A_k(t+dt) conj(A_k(t))] = e^{-k dt}/k.
std::complex<double> limit_coeff_autocov(int k, double dt);

}  // namespace ubm
