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

#include "ubm/covariance_oracle.hpp"
#include "ubm/ubm_sim.hpp"

using namespace ubm;
using std::complex;

TEST_CASE("SchemeParams: validation and alignment") {
  CHECK_NOTHROW(SchemeParams(0.1, 1.0, {0.0, 0.5, 1.0}));
  CHECK_THROWS_AS(SchemeParams(0.0, 1.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(SchemeParams(0.1, 1.0, {0.0, 0.55}), std::invalid_argument);
  CHECK_THROWS_AS(SchemeParams(0.1, 1.0, {0.5, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(SchemeParams(0.1, 1.0, {0.0, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(SchemeParams(0.1, 1.0, {}), std::invalid_argument);

  const SchemeParams u = SchemeParams::uniform(1.0, 512, 2.5e-3);
  CHECK(u.record_times.size() == 512);
  CHECK(u.dt <= 2.5e-3);
  CHECK(u.record_steps().back() * u.dt == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(SchemeParams::default_dt(1) == doctest::Approx(1e-2));
  CHECK(SchemeParams::default_dt(5) == doctest::Approx(1.0 / 1250.0));
}

TEST_CASE("SchemeParams::aligned_dt lands every record time on the step grid") {
  for (const auto& grid : {std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0},
                           std::vector<double>{0.1, 0.5, 1.0},
                           std::vector<double>{0.0, 0.2, 0.4}}) {
    for (double target : {1e-2, 1.0 / 450.0, 7e-4}) {
      const double dt = SchemeParams::aligned_dt(grid, target);
      CHECK(dt <= target * (1.0 + 1e-9));
      CHECK_NOTHROW(SchemeParams(dt, grid.back(), grid));
    }
  }
}

TEST_CASE("ubm_step: tiny dt leaves the matrix essentially unchanged") {
  RngStream rng(51, 0);
  const UnitaryMatrix u = sample_haar_unitary(5, rng);
  const UnitaryMatrix v = ubm_step(u, 1e-18, rng);
  CHECK((v.mat() - u.mat()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK_THROWS_AS(ubm_step(u, 0.0, rng), std::invalid_argument);
}

TEST_CASE("ubm_step: n=1 matches the closed-form U(1) autocovariance") {
  // u(t) = u(0) e^{i sqrt(2) W_t}, so E[u(t) conj(u(0))] = e^{-t}; the
  // geodesic scheme is exact in law for n = 1.
  RngStream rng(52, 0);
  const double t = 0.5;
  const double dt = 0.01;
  const int steps = static_cast<int>(t / dt + 0.5);
  const int reps = 20000;
  complex<double> acc(0.0, 0.0);
  for (int r = 0; r < reps; ++r) {
    UnitaryMatrix u = sample_haar_unitary(1, rng);
    const complex<double> u0 = u.mat()(0, 0);
    for (int s = 0; s < steps; ++s) u = ubm_step(u, dt, rng);
    acc += u.mat()(0, 0) * std::conj(u0);
  }
  const double sem = 1.0 / std::sqrt(double(reps));  // |u|=1 bounds the variance
  CHECK(std::abs(acc.real() / reps - std::exp(-t)) <= 4.0 * sem);
  CHECK(std::abs(acc.imag() / reps) <= 4.0 * sem);
}

TEST_CASE("unitarity is preserved over 10^4 steps") {
  RngStream rng(53, 0);
  const int n = 6;
  const SchemeParams params(1e-3, 10.0, {0.0, 10.0});
  const UbmTrajectory traj = simulate_trajectory(n, params, {1}, rng, true);
  REQUIRE(traj.matrices.size() == 2);
  ComplexMatrix defect = traj.matrices[1] * traj.matrices[1].adjoint();
  defect.diagonal().array() -= 1.0;
  CHECK(defect.cwiseAbs().maxCoeff() <= 1e-8 * n);
}

TEST_CASE("simulate_trajectory: T=0 is a single Haar record") {
  RngStream rng(54, 3);
  const SchemeParams params(1e-2, 0.0, {0.0});
  const UbmTrajectory traj = simulate_trajectory(4, params, {1, 2}, rng, true);
  REQUIRE(traj.times.size() == 1);
  REQUIRE(traj.matrices.size() == 1);
  // Identical stream replays exactly the Haar start.
  RngStream rng2(54, 3);
  const UnitaryMatrix u = sample_haar_unitary(4, rng2);
  CHECK((traj.matrices[0] - u.mat()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(traj.trace_at(1, 0) - u.mat().trace()) < 1e-12);
  CHECK_THROWS_AS(traj.trace_at(3, 0), std::invalid_argument);
}

TEST_CASE("simulate_trajectory: static moment E|Tr U^6|^2 = 4 at n=4") {
  RngStream base(55, 0);
  const SchemeParams params(1e-2, 0.0, {0.0});
  const int reps = 40000;
  double acc = 0.0, accsq = 0.0;
  for (int r = 0; r < reps; ++r) {
    RngStream rng(55, static_cast<std::uint64_t>(r));
    const UbmTrajectory traj = simulate_trajectory(4, params, {6}, rng);
    const double v = std::norm(traj.trace_at(6, 0));
    acc += v;
    accsq += v * v;
  }
  const double mean = acc / reps;
  const double sem = std::sqrt((accsq / reps - mean * mean) / reps);
  CHECK(std::abs(mean - 4.0) <= 4.0 * sem);
}

TEST_CASE("trace autocovariance matches the exact oracle at modest size") {
  // n = 10, modes 1 and 2, a light version of the full covariance check.
  const int n = 10;
  const double dt = 5e-3;
  const SchemeParams params(dt, 0.4, {0.0, 0.2, 0.4});
  const int reps = 600;
  std::vector<int> modes{1, 2, 3};
  std::vector<double> acc(12, 0.0), accsq(12, 0.0);
  for (int r = 0; r < reps; ++r) {
    RngStream rng(56, static_cast<std::uint64_t>(r));
    const UbmTrajectory traj = simulate_trajectory(n, params, modes, rng);
    int s = 0;
    for (int k : modes) {
      for (int i : {1, 2}) {
        const double v = (traj.trace_at(k, i) * std::conj(traj.trace_at(k, 0))).real();
        acc[s] += v;
        accsq[s] += v * v;
        ++s;
      }
    }
    // Decay ordering within each replica set is checked on the means below.
  }
  int s = 0;
  for (int k : modes) {
    double prev_mean = trace_autocov(k, n, 0.0);
    for (int i : {1, 2}) {
      const double mean = acc[s] / reps;
      const double sem = std::sqrt((accsq[s] / reps - mean * mean) / reps);
      const double oracle = trace_autocov(k, n, params.record_times[i]);
      CHECK(std::abs(mean - oracle) <= 4.0 * sem + 5.0 * dt);
      // Non-increasing in t up to noise.
      CHECK(mean <= prev_mean + 4.0 * sem);
      prev_mean = mean;
      ++s;
    }
  }
}

TEST_CASE("time reversibility in law") {
  // Two independent batches estimating E[Tr U(t) conj Tr U(0)] and the
  // conjugate of E[Tr U(0) conj Tr U(t)]; stationarity + reversibility make
  // them equal.
  const int n = 8;
  const SchemeParams params(5e-3, 0.3, {0.0, 0.3});
  auto batch = [&](std::uint64_t seed, bool forward) {
    const int reps = 500;
    complex<double> acc(0.0, 0.0);
    double accsq = 0.0;
    for (int r = 0; r < reps; ++r) {
      RngStream rng(seed, static_cast<std::uint64_t>(r));
      const UbmTrajectory traj = simulate_trajectory(n, params, {1}, rng);
      const complex<double> v = forward
          ? traj.trace_at(1, 1) * std::conj(traj.trace_at(1, 0))
          : std::conj(traj.trace_at(1, 0) * std::conj(traj.trace_at(1, 1)));
      acc += v;
      accsq += v.real() * v.real();
    }
    const double mean = acc.real() / reps;
    const double sem = std::sqrt((accsq / reps - mean * mean) / reps);
    return std::pair<double, double>(mean, sem);
  };
  const auto [m1, s1] = batch(57, true);
  const auto [m2, s2] = batch(58, false);
  CHECK(std::abs(m1 - m2) <= 4.0 * (s1 + s2));
}
