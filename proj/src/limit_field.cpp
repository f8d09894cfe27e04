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

#include "ubm/limit_field.hpp"

#include <cmath>
#include <stdexcept>

namespace ubm {

OuEnsemble sample_ou_paths(int K, std::span<const double> times, RngStream& rng) {
  if (K < 1) throw std::invalid_argument("sample_ou_paths: K must be >= 1");
  if (times.empty()) throw std::invalid_argument("sample_ou_paths: empty time grid");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("sample_ou_paths: times must be strictly ascending");
    }
  }
  OuEnsemble ens;
  ens.K = K;
  ens.times.assign(times.begin(), times.end());
  ens.paths.resize(K, static_cast<Eigen::Index>(times.size()));
  for (int k = 1; k <= K; ++k) {
    const double stat_sd = std::sqrt(1.0 / (2.0 * k));
    std::complex<double> a = stat_sd * rng.complex_normal();
    ens.paths(k - 1, 0) = a;
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double d = times[i] - times[i - 1];
      const double decay = std::exp(-double(k) * d);
      const double step_sd = std::sqrt((1.0 - decay * decay) / (2.0 * k));
      a = decay * a + step_sd * rng.complex_normal();
      ens.paths(k - 1, static_cast<Eigen::Index>(i)) = a;
    }
  }
  return ens;
}

double gff_covariance(double t, double theta, double tp, double thetap) {
  const double r = std::exp(-std::abs(t - tp));
  const double phi = theta - thetap;
  // |1 - r e^{i phi}|^2 = 1 - 2 r cos(phi) + r^2, via log1p for stability.
  const double sq = r * r - 2.0 * r * std::cos(phi);
  if (sq <= -1.0) {
    throw std::domain_error("gff_covariance: coincident points have divergent covariance");
  }
  return -0.25 * std::log1p(sq);
}

double gff_covariance_series(int K, double t, double theta, double tp, double thetap) {
  if (K < 1) throw std::invalid_argument("gff_covariance_series: K must be >= 1");
  const double tau = std::abs(t - tp);
  const double phi = theta - thetap;
  // Smallest terms first.
  double sum = 0.0;
  for (int k = K; k >= 1; --k) {
    sum += std::exp(-k * tau) * std::cos(k * phi) / (2.0 * k);
  }
  return sum;
}

double gff_series_tail_bound(int K, double tau) {
  if (K < 1) throw std::invalid_argument("gff_series_tail_bound: K must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("gff_series_tail_bound: tau must be > 0");
  return std::exp(-(K + 1.0) * tau) / (2.0 * (K + 1.0) * (1.0 - std::exp(-tau)));
}

std::complex<double> limit_coeff_autocov(int k, double dt) {
  if (k < 1) throw std::invalid_argument("limit_coeff_autocov: k must be >= 1");
  if (dt < 0.0) throw std::invalid_argument("limit_coeff_autocov: dt must be >= 0");
  return {std::exp(-double(k) * dt) / k, 0.0};
}

}  // namespace ubm
