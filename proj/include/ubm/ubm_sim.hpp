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
#include <vector>

#include "ubm/ensembles.hpp"
#include "ubm/rng.hpp"

namespace ubm {

/// Integration grid for a unitary Brownian path: step size, horizon, and the
/// times at which observables are recorded.  Every record time must be an
/// integer multiple of dt within 1e-12.
struct SchemeParams {
  double dt = 0.0;
  double horizon = 0.0;
  std::vector<double> record_times;

  SchemeParams(double dt, double horizon, std::vector<double> record_times);

  /// Uniform record grid with num_records points on [0, T]; dt is the record
  /// spacing divided into the smallest number of substeps bringing it at or
  /// below dt_target, so every record time is exactly on the step grid.
  static SchemeParams uniform(double T, int num_records, double dt_target);

  /// Step size tuned to the fastest requested observable: mode k relaxes at
  /// rate k (or faster, k^2/n, above the dimension).
  static double default_dt(int k_max);

  /// Largest step at or below dt_target that keeps every record time on the
  /// step grid (within the 1e-12 alignment tolerance).  Throws when no
  /// divisor of the record pattern works; pass dt explicitly then.
  static double aligned_dt(const std::vector<double>& record_times, double dt_target);

  /// Step index of each record time (multiples of dt).
  const std::vector<long long>& record_steps() const { return record_steps_; }

 private:
  std::vector<long long> record_steps_;
};

/// Observable record of one unitary Brownian path at stationarity.
struct UbmTrajectory {
  int n = 0;
  std::vector<int> modes;       // requested powers, ascending
  std::vector<double> times;    // record times, ascending
  Eigen::MatrixXcd traces;      // (modes.size(), times.size()): Tr U^k(t)
  std::vector<ComplexMatrix> matrices;  // full snapshots, only when requested

  std::complex<double> trace_at(int k, int time_idx) const;
};

/// One geodesic Euler step U <- U exp(sqrt(2) dB) with dB a skew-Hermitian
/// Brownian increment over dt.  The step stays exactly on the unitary group,
/// and the second-order term of exp supplies the Ito drift -U dt (the basis
/// identity sum X_k^2 = -I), making the scheme weak order one.
UnitaryMatrix ubm_step(const UnitaryMatrix& u, double dt, RngStream& rng);

/// Integrates one path started from Haar measure and records Tr(U^k) for
/// each requested mode at each record time.  The marginal law at every time
/// is exactly Haar: the start is Haar and every step multiplies by an
/// independent unitary.  Re-orthonormalizes every 1000 steps.
UbmTrajectory simulate_trajectory(int n, const SchemeParams& params,
                                  const std::vector<int>& modes, RngStream& rng,
                                  bool keep_matrices = false);

}  // namespace ubm
