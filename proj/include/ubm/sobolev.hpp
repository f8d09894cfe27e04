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

#include "ubm/char_field.hpp"

namespace ubm {

/// Regularity pair (s, -eps): time regularity s in (0,1) and circle
/// regularity -eps with eps > 0.  The regime with a finite limit norm is
/// 0 < s < 1/2 together with eps > s.
struct SobolevIndex {
  double s;
  double eps;

  SobolevIndex(double s, double eps);
  bool valid_regime() const { return s < 0.5 && eps > s; }
};

/// Coefficient field sampled on a uniform time grid, the discretization
/// carrier for the tensor norm.
struct DiscreteField {
  std::vector<double> times;  // uniform spacing
  Eigen::MatrixXcd coeffs;    // (K, times.size()); row k-1 is mode k

  DiscreteField(std::vector<double> times, Eigen::MatrixXcd coeffs);
  static DiscreteField from_field(const FourierField& field);

  int modes() const { return static_cast<int>(coeffs.rows()); }
  int grid_points() const { return static_cast<int>(times.size()); }
  double spacing() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

/// sum_k |k|^{2 exponent} |f_k|^2 over a one-sided coefficient list whose
/// first entry is mode `first_mode` (>= 1; the zero mode is excluded because
/// the spaces have vanishing mean).
double circle_norm_sq(std::span<const std::complex<double>> coeffs, double exponent,
                      int first_mode = 1);

/// Squared Slobodeckij norm of samples on a uniform grid over [0, T]:
///
///   int |f|^2 dt  +  int int |f(t) - f(u)|^2 / |t-u|^{1+2s} du dt,
///
/// both by the trapezoid rule on the product grid.  The diagonal nodes
/// (|t-u| < h) are excluded, which makes this a lower-bound estimator whose
/// bias vanishes under refinement for s < 1/2.
double slobodeckij_norm_sq(std::span<const std::complex<double>> samples, double s,
                           double T);

/// Squared tensor norm on H^s([0,T]) (x) H_0^{-eps}(S^1):
///
///   int ||F(t,.)||^2_{-eps} dt
///   + int int ||F(t,.) - F(u,.)||^2_{-eps} / |t-u|^{1+2s} du dt,
///
/// discretized exactly as slobodeckij_norm_sq with the circle norm inside.
double tensor_norm_sq(const DiscreteField& field, const SobolevIndex& idx);

/// Exact expectation of the discretized tensor norm of the log
/// characteristic polynomial field at dimension n, assembled mode by mode
/// from the closed-form trace moments:
///
///   static:    T sum_{k<=K} k^{-2-2eps} (k ^ n)
///   increment: sum_{k<=K} k^{-2-2eps} int int E|Tr U^k(t)-Tr U^k(r)|^2 / |t-r|^{1+2s}
///
/// using the same grid, weights and diagonal exclusion as tensor_norm_sq, so
/// that the Monte Carlo estimator is unbiased against it up to the
/// integrator's time-correlation error.  The reported tail bound covers the
/// discarded modes k > K: T K^{-2eps}/(2 eps).
struct ExpectedTensorNorm {
  double value = 0.0;
  double static_term = 0.0;
  double increment_term = 0.0;
  double mode_tail_bound = 0.0;
};
ExpectedTensorNorm expected_tensor_norm_exact(int n, const SobolevIndex& idx, int K,
                                              double T, int grid_points);

}  // namespace ubm
