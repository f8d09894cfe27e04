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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "ubm/limit_field.hpp"
#include "ubm/rng.hpp"

using namespace ubm;
using std::complex;

TEST_CASE("sample_ou_paths: stationary variance 1/k across time") {
  RngStream rng(41, 0);
  const std::vector<double> times{0.0, 0.4, 1.1};
  const int K = 4;
  const int reps = 40000;
  std::vector<double> sumsq(K, 0.0);
  for (int r = 0; r < reps; ++r) {
    const OuEnsemble ens = sample_ou_paths(K, times, rng);
    for (int k = 1; k <= K; ++k) {
      for (std::size_t i = 0; i < times.size(); ++i) {
        sumsq[k - 1] += std::norm(ens.at(k, static_cast<int>(i)));
      }
    }
  }
  const double draws = double(reps) * times.size();
  for (int k = 1; k <= K; ++k) {
    // |A|^2 is exponential with mean 1/k, so sd = 1/k; time samples are
    // correlated, so allow the full per-draw sd without the sqrt(#times).
    const double tol = 4.0 * (1.0 / k) / std::sqrt(double(reps));
    CHECK(std::abs(sumsq[k - 1] / draws - 1.0 / k) <= tol);
  }
}

TEST_CASE("sample_ou_paths: exact transition autocovariance at lag 0.7") {
  RngStream rng(42, 0);
  const std::vector<double> times{0.0, 0.7};
  const int reps = 100000;
  double cov_re = 0.0;
  complex<double> pseudo(0.0, 0.0);
  for (int r = 0; r < reps; ++r) {
    const OuEnsemble ens = sample_ou_paths(1, times, rng);
    cov_re += (ens.at(1, 1) * std::conj(ens.at(1, 0))).real();
    pseudo += ens.at(1, 1) * ens.at(1, 0);
  }
  const double sem = std::sqrt(2.0) / std::sqrt(double(reps));  // Var ~ E|A|^4 = 2
  CHECK(std::abs(cov_re / reps - std::exp(-0.7)) <= 4.0 * sem);
  CHECK(std::abs(pseudo.real() / reps) <= 4.0 * sem);
  CHECK(std::abs(pseudo.imag() / reps) <= 4.0 * sem);
}

TEST_CASE("sample_ou_paths: far-apart times decorrelate, variance stays stationary") {
  RngStream rng(43, 0);
  const std::vector<double> times{0.0, 50.0};
  const int reps = 50000;
  const int k = 3;
  double cov = 0.0, var_re = 0.0;
  for (int r = 0; r < reps; ++r) {
    const OuEnsemble ens = sample_ou_paths(k, times, rng);
    cov += (ens.at(k, 1) * std::conj(ens.at(k, 0))).real();
    var_re += ens.at(k, 1).real() * ens.at(k, 1).real();
  }
  CHECK(std::abs(cov / reps) <= 4.0 * (2.0 / k) / std::sqrt(double(reps)));
  const double tol = 4.0 * std::sqrt(2.0) * (0.5 / k) / std::sqrt(double(reps));
  CHECK(std::abs(var_re / reps - 1.0 / (2.0 * k)) <= tol);
}

TEST_CASE("sample_ou_paths: rejects bad grids") {
  RngStream rng(44, 0);
  const std::vector<double> bad{0.0, 1.0, 0.5};
  CHECK_THROWS_AS(sample_ou_paths(2, bad, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_ou_paths(0, std::vector<double>{0.0}, rng), std::invalid_argument);
}

TEST_CASE("gff_covariance: hand values and decay") {
  CHECK(gff_covariance(1.3, 0.4, 1.3, 0.4 + M_PI) ==
        doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(gff_covariance(0.0, 0.7, 40.0, 0.7)) < 1e-15);
  CHECK_THROWS_AS(gff_covariance(1.0, 2.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("gff_covariance: agrees with the max-ratio form at random points") {
  RngStream rng(45, 0);
  for (int i = 0; i < 100; ++i) {
    const double t = 3.0 * rng.uniform01();
    const double tp = t + 0.05 + 2.0 * rng.uniform01();
    const double th = 6.28 * rng.uniform01();
    const double thp = 6.28 * rng.uniform01();
    const complex<double> z1 = std::exp(-t) * std::polar(1.0, th);
    const complex<double> z2 = std::exp(-tp) * std::polar(1.0, thp);
    const double direct = 0.5 * std::log(std::max(std::exp(-t), std::exp(-tp)) / std::abs(z1 - z2));
    const double stable = gff_covariance(t, th, tp, thp);
    CHECK(std::abs(stable - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("gff_covariance_series: single term, tail bound, alternating limit") {
  CHECK(gff_covariance_series(1, 0.0, 1.0, 0.5, 0.0) ==
        doctest::Approx(std::exp(-0.5) * std::cos(1.0) / 2.0).epsilon(1e-14));

  // Spot check against the closed form.  The analytic tail here is far
  // below double-precision resolution of the two routes, so a machine
  // epsilon floor is added on top of the bound.
  const double closed = gff_covariance(0.0, 1.0, 0.5, 0.0);
  const double series = gff_covariance_series(100, 0.0, 1.0, 0.5, 0.0);
  const double floor = 8.0 * 1e-16 * std::abs(closed);
  CHECK(std::abs(series - closed) <= gff_series_tail_bound(100, 0.5) + floor);

  // Lag 0.1 keeps the strict analytic bound above roundoff.
  const double c2 = gff_covariance(0.0, 2.2, 0.1, 0.4);
  const double s2 = gff_covariance_series(200, 0.0, 2.2, 0.1, 0.4);
  CHECK(std::abs(s2 - c2) <= gff_series_tail_bound(200, 0.1));

  // Equal times, angle gap pi: alternating series towards -log(2)/2.
  const double alt = gff_covariance_series(1000000, 2.0, 0.3, 2.0, 0.3 + M_PI);
  CHECK(std::abs(alt + 0.5 * std::log(2.0)) <= 1e-5);
}

TEST_CASE("limit_coeff_autocov: values and monotonicity") {
  CHECK(limit_coeff_autocov(3, 0.0) == complex<double>(1.0 / 3.0, 0.0));
  CHECK(limit_coeff_autocov(2, std::log(2.0)).real() == doctest::Approx(0.125).epsilon(1e-14));
  double prev = limit_coeff_autocov(4, 0.0).real();
  for (double dt : {0.1, 0.3, 0.9, 2.5}) {
    const double cur = limit_coeff_autocov(4, dt).real();
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(limit_coeff_autocov(0, 0.1), std::invalid_argument);
}

TEST_CASE("assembled field covariance matches the truncated series for Re and Im") {
  // X(t, theta) = sum_k A_k(t) e^{-ik theta}; both Re X and Im X must have
  // covariance sum_{k<=K} e^{-k dt} cos(k dtheta)/(2k).
  RngStream rng(46, 0);
  const int K = 6;
  const std::vector<double> times{0.0, 0.35};
  const double th1 = 0.9, th2 = 2.1;
  const int reps = 60000;
  double acc_re = 0.0, acc_im = 0.0, acc_re_sq = 0.0, acc_im_sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    const OuEnsemble ens = sample_ou_paths(K, times, rng);
    complex<double> x1(0.0, 0.0), x2(0.0, 0.0);
    for (int k = 1; k <= K; ++k) {
      x1 += ens.at(k, 0) * std::polar(1.0, -k * th1);
      x2 += ens.at(k, 1) * std::polar(1.0, -k * th2);
    }
    const double pr = x1.real() * x2.real();
    const double pi = x1.imag() * x2.imag();
    acc_re += pr;
    acc_im += pi;
    acc_re_sq += pr * pr;
    acc_im_sq += pi * pi;
  }
  const double target = gff_covariance_series(K, times[0], th1, times[1], th2);
  const double mean_re = acc_re / reps;
  const double mean_im = acc_im / reps;
  const double sem_re = std::sqrt((acc_re_sq / reps - mean_re * mean_re) / reps);
  const double sem_im = std::sqrt((acc_im_sq / reps - mean_im * mean_im) / reps);
  CHECK(std::abs(mean_re - target) <= 4.0 * sem_re);
  CHECK(std::abs(mean_im - target) <= 4.0 * sem_im);
  CHECK(std::abs(mean_re - mean_im) <= 4.0 * (sem_re + sem_im));
}
