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

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace ubm {

/// Function on the unit circle with finitely many Fourier coefficients and
/// vanishing mean (no k = 0 coefficient allowed).
class CircleFunction {
 public:
  CircleFunction() = default;

  /// Sets the coefficient of e^{ik theta}; k = 0 is rejected.
  void set_coeff(int k, std::complex<double> value);

  std::complex<double> coeff(int k) const;
  const std::map<int, std::complex<double>>& coeffs() const { return coeffs_; }

  /// True when f_{-k} = conj(f_k) for every mode, i.e. f is real-valued.
  bool is_real(double tol = 1e-12) const;

 private:
  std::map<int, std::complex<double>> coeffs_;
};

/// log(sinh(x)) for x > 0 without overflow: series below 1e-4, plain log in
/// the middle, and x + log1p(-e^{-2x}) - log 2 above 30.
double log_sinh(double x);

/// Stationary autocovariance E[Tr(U^k(t)) conj(Tr(U^k(0)))] of unitary
/// Brownian motion at equilibrium:
///
///   exp(-k (k v n) t / n) * sinh(k (k ^ n) t / n) / sinh(k t / n),
///
/// evaluated in log space so that large k and t cannot overflow.  At t = 0
/// the limit is k ^ n (the static second moment of Tr U^k).
double trace_autocov(int k, int n, double t);

/// Two-time covariance of linear eigenvalue statistics
/// E[ sum_j f(z_j(0)) sum_j g(z_j(t)) ] for real-valued f, g:
///
///   sum_{|k| <= n-1} f_k g_{-k} sgn(k) e^{-|k|t} sinh(k^2 t/n)/sinh(k t/n)
///   + sum_{|k| >= n} f_k g_{-k} e^{-k^2 t/n} sinh(k t)/sinh(k t/n).
///
/// In both branches the k and -k weights coincide (the sgn(k) flips with the
/// sign of the sinh), so each term reduces to f_k g_{-k} trace_autocov(|k|).
double linear_stat_cov(const CircleFunction& f, const CircleFunction& g, int n,
                       double t);

/// Mean squared increment E|Tr(U^k(t)) - Tr(U^k(0))|^2
///   = 2 (k ^ n) - 2 trace_autocov(k, n, t);
/// bounded by 4 k^2 t for t < 1/k, and by 2 (k ^ n) always.
double increment_msd(int k, int n, double t);

/// Smallest dimension at which the joint trace moment below is exact:
/// max(sum_j j a_j, sum_j j b_j).
int ds_threshold(const std::vector<int>& a, const std::vector<int>& b);

/// Diaconis-Shahshahani joint moment of traces of powers of a Haar unitary,
///   E[ prod_j (Tr U^j)^{a_j} conj(Tr U^j)^{b_j} ] = delta_{ab} prod_j j^{a_j} a_j!,
/// valid for n >= ds_threshold(a, b); below the threshold no value is
/// claimed and nullopt is returned.  a[i], b[i] are the multiplicities of
/// power j = i + 1.
std::optional<long long> ds_joint_moment(const std::vector<int>& a,
                                         const std::vector<int>& b, int n);

}  // namespace ubm
