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

#include "ubm/ubm_sim.hpp"

namespace ubm {

/// Value of the log characteristic polynomial at one point.  When theta hits
/// an eigenangle the real part is -infinity and that term contributes +pi/2
/// to the imaginary part; the hit is flagged.
struct LogCharValue {
  std::complex<double> value;
  bool at_eigenangle = false;
};

/// sum_k log(1 - e^{i(theta_k - theta)}) with principal branches, so each
/// term's imaginary part lies in (-pi/2, pi/2].  Evaluated through the exact
/// factorization 1 - e^{id} = 2 sin(d/2) e^{i(d - pi)/2}, which is stable
/// arbitrarily close to the eigenangles.  A hit within 1e-12 of an
/// eigenangle (circle distance) is treated as exact.
LogCharValue log_char_poly(std::span<const double> eigenangles, double theta);

/// Fourier coefficient of the log characteristic polynomial against
/// e^{-ik theta}: c_k = -Tr(U^k)/k, for k >= 1.
std::complex<double> fourier_coeff(std::complex<double> trace_k, int k);

/// One-sided Fourier coefficient paths c_k(t_i), 1 <= k <= K, of a field on
/// [0,T] x S^1 against the basis e^{-ik theta}.
struct FourierField {
  std::vector<double> times;
  Eigen::MatrixXcd coeffs;  // (K, times.size()); row k-1 holds c_k

  int modes() const { return static_cast<int>(coeffs.rows()); }
  std::complex<double> at(int k, int time_idx) const { return coeffs(k - 1, time_idx); }
};

/// Builds the coefficient field c_k(t) = -Tr(U^k(t))/k from a trajectory
/// that recorded all modes 1..K; missing modes are rejected.
FourierField field_from_trajectory(const UbmTrajectory& traj, int K);

}  // namespace ubm
