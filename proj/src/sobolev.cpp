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

#include "ubm/sobolev.hpp"

#include <cmath>
#include <stdexcept>

#include "ubm/covariance_oracle.hpp"

namespace ubm {

namespace {

std::vector<double> trapezoid_weights(int n_points) {
  std::vector<double> w(n_points, 1.0);
  if (n_points >= 2) {
    w.front() = 0.5;
    w.back() = 0.5;
  }
  return w;
}

// sum over ordered pairs (i, j) with |i - j| = lag of w_i w_j.
std::vector<double> lag_pair_weights(const std::vector<double>& w) {
  const int n = static_cast<int>(w.size());
  std::vector<double> pw(n, 0.0);
  for (int lag = 1; lag < n; ++lag) {
    double acc = 0.0;
    for (int i = 0; i + lag < n; ++i) acc += w[i] * w[i + lag];
    pw[lag] = 2.0 * acc;
  }
  return pw;
}

}  // namespace

SobolevIndex::SobolevIndex(double s_in, double eps_in) : s(s_in), eps(eps_in) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("SobolevIndex: s must be in (0,1)");
  if (!(eps > 0.0)) throw std::invalid_argument("SobolevIndex: eps must be > 0");
}

DiscreteField::DiscreteField(std::vector<double> times_in, Eigen::MatrixXcd coeffs_in)
    : times(std::move(times_in)), coeffs(std::move(coeffs_in)) {
  if (times.empty() || coeffs.rows() < 1 ||
      coeffs.cols() != static_cast<Eigen::Index>(times.size())) {
    throw std::invalid_argument("DiscreteField: shape mismatch");
  }
  if (times.size() >= 2) {
    const double h = times[1] - times[0];
    if (!(h > 0.0)) throw std::invalid_argument("DiscreteField: times must ascend");
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (std::abs(times[i] - times[i - 1] - h) > 1e-9 * std::max(1.0, h)) {
        throw std::invalid_argument("DiscreteField: grid must be uniform");
      }
    }
  }
}

DiscreteField DiscreteField::from_field(const FourierField& field) {
  return DiscreteField(field.times, field.coeffs);
}

double circle_norm_sq(std::span<const std::complex<double>> coeffs, double exponent,
                      int first_mode) {
  if (first_mode < 1) {
    throw std::invalid_argument("circle_norm_sq: zero mode excluded (first_mode >= 1)");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double k = static_cast<double>(first_mode + static_cast<int>(i));
    acc += std::pow(k, 2.0 * exponent) * std::norm(coeffs[i]);
  }
  return acc;
}

double slobodeckij_norm_sq(std::span<const std::complex<double>> samples, double s,
                           double T) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("slobodeckij_norm_sq: s in (0,1)");
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw std::invalid_argument("slobodeckij_norm_sq: need >= 2 grid points");
  const double h = T / (n - 1);
  const auto w = trapezoid_weights(n);

  double l2 = 0.0;
  for (int i = 0; i < n; ++i) l2 += w[i] * std::norm(samples[i]);
  l2 *= h;

  double seminorm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double kernel = std::pow((j - i) * h, -(1.0 + 2.0 * s));
      seminorm += 2.0 * w[i] * w[j] * std::norm(samples[i] - samples[j]) * kernel;
    }
  }
  seminorm *= h * h;
  return l2 + seminorm;
}

double tensor_norm_sq(const DiscreteField& field, const SobolevIndex& idx) {
  const int n_t = field.grid_points();
  if (n_t < 2) throw std::invalid_argument("tensor_norm_sq: need >= 2 grid points");
  const int K = field.modes();
  const double h = field.spacing();
  const auto w = trapezoid_weights(n_t);

  // Gram matrix G_ij = <F(t_i,.), F(t_j,.)>_{-eps}; the pairwise circle
  // norms then come from G_ii + G_jj - 2 Re G_ij.
  Eigen::VectorXd mode_weight(K);
  for (int k = 1; k <= K; ++k) mode_weight(k - 1) = std::pow(double(k), -2.0 * idx.eps);
  Eigen::MatrixXcd weighted = field.coeffs;
  for (int k = 0; k < K; ++k) weighted.row(k) *= mode_weight(k);
  const Eigen::MatrixXcd gram = field.coeffs.adjoint() * weighted;

  double first = 0.0;
  for (int i = 0; i < n_t; ++i) first += w[i] * gram(i, i).real();
  first *= h;

  double second = 0.0;
  for (int i = 0; i < n_t; ++i) {
    for (int j = i + 1; j < n_t; ++j) {
      const double diff = gram(i, i).real() + gram(j, j).real() - 2.0 * gram(i, j).real();
      const double kernel = std::pow((j - i) * h, -(1.0 + 2.0 * idx.s));
      second += 2.0 * w[i] * w[j] * diff * kernel;
    }
  }
  second *= h * h;
  return first + second;
}

ExpectedTensorNorm expected_tensor_norm_exact(int n, const SobolevIndex& idx, int K,
                                              double T, int grid_points) {
  if (n < 1) throw std::invalid_argument("expected_tensor_norm_exact: n must be >= 1");
  if (K < 1) throw std::invalid_argument("expected_tensor_norm_exact: K must be >= 1");
  if (grid_points < 2) {
    throw std::invalid_argument("expected_tensor_norm_exact: need >= 2 grid points");
  }
  if (!(T > 0.0)) throw std::invalid_argument("expected_tensor_norm_exact: T must be > 0");

  ExpectedTensorNorm out;
  for (int k = 1; k <= K; ++k) {
    out.static_term += std::pow(double(k), -2.0 - 2.0 * idx.eps) * std::min(k, n);
  }
  out.static_term *= T;

  const double h = T / (grid_points - 1);
  const auto pw = lag_pair_weights(trapezoid_weights(grid_points));
  for (int k = 1; k <= K; ++k) {
    const double mode_factor = std::pow(double(k), -2.0 - 2.0 * idx.eps);
    double q = 0.0;
    for (int lag = 1; lag < grid_points; ++lag) {
      const double tau = lag * h;
      q += pw[lag] * increment_msd(k, n, tau) * std::pow(tau, -(1.0 + 2.0 * idx.s));
    }
    out.increment_term += mode_factor * q * h * h;
  }

  out.mode_tail_bound = T * std::pow(double(K), -2.0 * idx.eps) / (2.0 * idx.eps);
  out.value = out.static_term + out.increment_term;
  return out;
}

}  // namespace ubm
