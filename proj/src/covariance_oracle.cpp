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

#include "ubm/covariance_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ubm {

void CircleFunction::set_coeff(int k, std::complex<double> value) {
  if (k == 0) throw std::invalid_argument("CircleFunction: zero mode must vanish");
  if (value == std::complex<double>(0.0, 0.0)) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = value;
  }
}

std::complex<double> CircleFunction::coeff(int k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

bool CircleFunction::is_real(double tol) const {
  double scale = 0.0;
  for (const auto& [k, v] : coeffs_) scale = std::max(scale, std::abs(v));
  for (const auto& [k, v] : coeffs_) {
    if (std::abs(coeff(-k) - std::conj(v)) > tol * std::max(1.0, scale)) return false;
  }
  return true;
}

double log_sinh(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_sinh: x must be > 0");
  if (x < 1e-4) return std::log(x) + std::log1p(x * x / 6.0);
  if (x > 30.0) return x + std::log1p(-std::exp(-2.0 * x)) - 0.6931471805599453094172321;
  return std::log(std::sinh(x));
}

double trace_autocov(int k, int n, double t) {
  if (k < 1 || n < 1) throw std::invalid_argument("trace_autocov: k, n must be >= 1");
  if (t < 0.0) throw std::invalid_argument("trace_autocov: t must be >= 0");
  const double k_min_n = std::min(k, n);
  if (t == 0.0) return k_min_n;
  const double kd = k;
  const double nd = n;
  const double k_max_n = std::max(k, n);
  const double log_ratio = log_sinh(kd * k_min_n * t / nd) - log_sinh(kd * t / nd);
  return std::exp(-kd * k_max_n * t / nd + log_ratio);
}

double linear_stat_cov(const CircleFunction& f, const CircleFunction& g, int n,
                       double t) {
  if (n < 1) throw std::invalid_argument("linear_stat_cov: n must be >= 1");
  if (t < 0.0) throw std::invalid_argument("linear_stat_cov: t must be >= 0");
  if (!f.is_real() || !g.is_real()) {
    throw std::invalid_argument("linear_stat_cov: f and g must be real-valued");
  }
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [k, fk] : f.coeffs()) {
    const std::complex<double> gmk = g.coeff(-k);
    if (gmk == std::complex<double>(0.0, 0.0)) continue;
    acc += fk * gmk * trace_autocov(std::abs(k), n, t);
  }
  return acc.real();
}

double increment_msd(int k, int n, double t) {
  const double k_min_n = std::min(k, n);
  return std::max(0.0, 2.0 * k_min_n - 2.0 * trace_autocov(k, n, t));
}

namespace {

void require_multiplicities(const std::vector<int>& a, const char* name) {
  for (int m : a) {
    if (m < 0) {
      throw std::invalid_argument(std::string("ds_joint_moment: negative multiplicity in ") + name);
    }
  }
}

}  // namespace

int ds_threshold(const std::vector<int>& a, const std::vector<int>& b) {
  require_multiplicities(a, "a");
  require_multiplicities(b, "b");
  long long wa = 0;
  long long wb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) wa += static_cast<long long>(i + 1) * a[i];
  for (std::size_t i = 0; i < b.size(); ++i) wb += static_cast<long long>(i + 1) * b[i];
  return static_cast<int>(std::max(wa, wb));
}

std::optional<long long> ds_joint_moment(const std::vector<int>& a,
                                         const std::vector<int>& b, int n) {
  if (n < 1) throw std::invalid_argument("ds_joint_moment: n must be >= 1");
  const int n_min = ds_threshold(a, b);
  if (n < n_min) return std::nullopt;
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    const int ai = i < a.size() ? a[i] : 0;
    const int bi = i < b.size() ? b[i] : 0;
    if (ai != bi) return 0;
  }
  long long value = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long long j = static_cast<long long>(i + 1);
    for (int c = 0; c < a[i]; ++c) value *= j;
    for (long long c = 2; c <= a[i]; ++c) value *= c;
  }
  return value;
}

}  // namespace ubm
