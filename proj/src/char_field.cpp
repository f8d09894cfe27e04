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

#include "ubm/char_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ubm {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kHitTol = 1e-12;
}  // namespace

LogCharValue log_char_poly(std::span<const double> eigenangles, double theta) {
  LogCharValue out{{0.0, 0.0}, false};
  double re = 0.0;
  double im = 0.0;
  for (double ak : eigenangles) {
    double d = std::fmod(ak - theta, kTwoPi);
    if (d < 0.0) d += kTwoPi;
    const double circle_dist = std::min(d, kTwoPi - d);
    if (circle_dist < kHitTol) {
      out.at_eigenangle = true;
      im += kPi / 2.0;
      continue;
    }
    // 1 - e^{id} = 2 sin(d/2) e^{i(d - pi)/2} for d in (0, 2 pi); the
    // imaginary part (d - pi)/2 lies in the open branch window.
    re += std::log(2.0 * std::sin(0.5 * d));
    im += 0.5 * (d - kPi);
  }
  if (out.at_eigenangle) re = -std::numeric_limits<double>::infinity();
  out.value = {re, im};
  return out;
}

std::complex<double> fourier_coeff(std::complex<double> trace_k, int k) {
  if (k < 1) throw std::invalid_argument("fourier_coeff: k must be >= 1 (zero mode excluded)");
  return -trace_k / static_cast<double>(k);
}

FourierField field_from_trajectory(const UbmTrajectory& traj, int K) {
  if (K < 1) throw std::invalid_argument("field_from_trajectory: K must be >= 1");
  FourierField field;
  field.times = traj.times;
  field.coeffs.resize(K, static_cast<Eigen::Index>(traj.times.size()));
  // Requires contiguous modes 1..K in the trajectory.
  std::vector<Eigen::Index> row_of(K + 1, -1);
  for (std::size_t m = 0; m < traj.modes.size(); ++m) {
    const int k = traj.modes[m];
    if (k >= 1 && k <= K) row_of[k] = static_cast<Eigen::Index>(m);
  }
  for (int k = 1; k <= K; ++k) {
    if (row_of[k] < 0) {
      throw std::invalid_argument("field_from_trajectory: trajectory missing mode " +
                                  std::to_string(k));
    }
    for (Eigen::Index i = 0; i < field.coeffs.cols(); ++i) {
      field.coeffs(k - 1, i) = fourier_coeff(traj.traces(row_of[k], i), k);
    }
  }
  return field;
}

}  // namespace ubm
