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

#include "ubm/ubm_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ubm {

namespace {
constexpr long long kReorthonormalizeEvery = 1000;
constexpr double kAlignTol = 1e-12;
}  // namespace

SchemeParams::SchemeParams(double dt_in, double horizon_in,
                           std::vector<double> record_times_in)
    : dt(dt_in), horizon(horizon_in), record_times(std::move(record_times_in)) {
  if (!(dt > 0.0)) throw std::invalid_argument("SchemeParams: dt must be > 0");
  if (horizon < 0.0) throw std::invalid_argument("SchemeParams: horizon must be >= 0");
  if (record_times.empty()) {
    throw std::invalid_argument("SchemeParams: at least one record time required");
  }
  double prev = -1.0;
  record_steps_.reserve(record_times.size());
  for (double t : record_times) {
    if (t < 0.0 || t > horizon + kAlignTol) {
      throw std::invalid_argument("SchemeParams: record time outside [0, horizon]");
    }
    if (t <= prev) throw std::invalid_argument("SchemeParams: record times must ascend");
    prev = t;
    const long long step = std::llround(t / dt);
    if (std::abs(t - step * dt) > kAlignTol) {
      throw std::invalid_argument("SchemeParams: record time not aligned to the step grid");
    }
    record_steps_.push_back(step);
  }
}

SchemeParams SchemeParams::uniform(double T, int num_records, double dt_target) {
  if (num_records < 1) throw std::invalid_argument("SchemeParams::uniform: need records");
  if (!(dt_target > 0.0)) throw std::invalid_argument("SchemeParams::uniform: dt_target > 0");
  std::vector<double> times;
  times.reserve(num_records);
  if (num_records == 1 || T == 0.0) {
    return SchemeParams(dt_target, T, {0.0});
  }
  const double spacing = T / (num_records - 1);
  const int substeps = std::max(1, static_cast<int>(std::ceil(spacing / dt_target - 1e-9)));
  const double dt = spacing / substeps;
  for (int i = 0; i < num_records; ++i) times.push_back(i * spacing);
  return SchemeParams(dt, T, std::move(times));
}

double SchemeParams::default_dt(int k_max) {
  if (k_max < 1) throw std::invalid_argument("SchemeParams::default_dt: k_max must be >= 1");
  return std::min(1e-2, 1.0 / (50.0 * k_max * k_max));
}

double SchemeParams::aligned_dt(const std::vector<double>& record_times, double dt_target) {
  if (!(dt_target > 0.0)) throw std::invalid_argument("aligned_dt: dt_target must be > 0");
  if (record_times.empty()) throw std::invalid_argument("aligned_dt: no record times");

  std::vector<double> bases;
  double prev = 0.0;
  double min_gap = 0.0;
  for (double t : record_times) {
    if (t > prev && (min_gap == 0.0 || t - prev < min_gap)) min_gap = t - prev;
    prev = t;
  }
  if (min_gap > 0.0) bases.push_back(min_gap);
  for (double t : record_times) {
    if (t > 0.0) {
      bases.push_back(t);
      break;
    }
  }
  if (bases.empty()) return dt_target;  // single record at t = 0

  for (double base : bases) {
    const double m = std::ceil(base / dt_target - 1e-9);
    const double dt = base / m;
    bool ok = true;
    for (double t : record_times) {
      if (std::abs(t - std::llround(t / dt) * dt) > kAlignTol) {
        ok = false;
        break;
      }
    }
    if (ok) return dt;
  }
  throw std::invalid_argument(
      "aligned_dt: record times share no convenient step; pass dt explicitly");
}

std::complex<double> UbmTrajectory::trace_at(int k, int time_idx) const {
  const auto it = std::lower_bound(modes.begin(), modes.end(), k);
  if (it == modes.end() || *it != k) {
    throw std::invalid_argument("UbmTrajectory: mode not recorded");
  }
  return traces(static_cast<Eigen::Index>(it - modes.begin()), time_idx);
}

UnitaryMatrix ubm_step(const UnitaryMatrix& u, double dt, RngStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("ubm_step: dt must be > 0");
  const int n = u.dim();
  // sqrt(2) dB = i c G with G ~ GUE(n) and c = sqrt(2 dt / n); the step
  // factor exp(i c G) is assembled from the eigendecomposition of G, which
  // saves forming the increment and one matrix product per step.
  const HermitianMatrix g = sample_gue(n, rng);
  const double c = std::sqrt(2.0 * dt / n);
  if (n == 1) {
    ComplexMatrix m(1, 1);
    m(0, 0) = u.mat()(0, 0) * std::polar(1.0, c * g.mat()(0, 0).real());
    return UnitaryMatrix::trusted(std::move(m));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g.mat());
  Eigen::VectorXcd phases(n);
  for (int i = 0; i < n; ++i) phases(i) = std::polar(1.0, c * es.eigenvalues()(i));
  ComplexMatrix w = u.mat() * es.eigenvectors();
  w = w * phases.asDiagonal();
  return UnitaryMatrix::trusted(w * es.eigenvectors().adjoint());
}

UbmTrajectory simulate_trajectory(int n, const SchemeParams& params,
                                  const std::vector<int>& modes, RngStream& rng,
                                  bool keep_matrices) {
  if (modes.empty()) throw std::invalid_argument("simulate_trajectory: modes must be non-empty");
  UbmTrajectory traj;
  traj.n = n;
  traj.modes = modes;
  std::sort(traj.modes.begin(), traj.modes.end());
  traj.times = params.record_times;
  traj.traces.resize(static_cast<Eigen::Index>(traj.modes.size()),
                     static_cast<Eigen::Index>(traj.times.size()));

  UnitaryMatrix u = sample_haar_unitary(n, rng);
  const auto& record_steps = params.record_steps();
  const long long last_step = record_steps.back();

  std::size_t next_record = 0;
  const double trace_bound = n * (1.0 + 1e-9);
  auto record = [&](long long step) {
    while (next_record < record_steps.size() && record_steps[next_record] == step) {
      const auto tr = traces_of_powers(u, traj.modes);
      for (std::size_t m = 0; m < tr.size(); ++m) {
        if (std::abs(tr[m]) > trace_bound) {
          throw std::runtime_error("simulate_trajectory: |Tr U^k| exceeded n");
        }
        traj.traces(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(next_record)) = tr[m];
      }
      if (keep_matrices) traj.matrices.push_back(u.mat());
      ++next_record;
    }
  };

  record(0);
  for (long long step = 1; step <= last_step; ++step) {
    u = ubm_step(u, params.dt, rng);
    if (step % kReorthonormalizeEvery == 0) u = nearest_unitary(u.mat());
    record(step);
  }
  return traj;
}

}  // namespace ubm
