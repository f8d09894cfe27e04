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

#include "ubm/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ubm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square_finite(m_, "UnitaryMatrix");
  const int n = static_cast<int>(m_.rows());
  ComplexMatrix defect = m_ * m_.adjoint();
  defect.diagonal().array() -= 1.0;
  if (max_abs(defect) > unitarity_tol(n)) {
    throw std::invalid_argument("UnitaryMatrix: unitarity defect exceeds tolerance");
  }
}

UnitaryMatrix UnitaryMatrix::trusted(ComplexMatrix m) {
  return UnitaryMatrix(std::move(m), TrustedTag{});
}

double UnitaryMatrix::unitarity_defect() const {
  ComplexMatrix defect = m_ * m_.adjoint();
  defect.diagonal().array() -= 1.0;
  return max_abs(defect);
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  require_square_finite(m, "HermitianMatrix");
  m_ = 0.5 * (m + m.adjoint());
}

SkewHermitianMatrix::SkewHermitianMatrix(const ComplexMatrix& m) {
  require_square_finite(m, "SkewHermitianMatrix");
  m_ = 0.5 * (m - m.adjoint());
}

UnitaryMatrix sample_haar_unitary(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_unitary: n must be >= 1");
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  // Multiply each column by the phase of the matching R diagonal entry; this
  // is the unique correction making Q the factor with positive-diagonal R,
  // which is Haar-distributed for Ginibre input.
  const auto diag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = diag(j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return UnitaryMatrix::trusted(std::move(q));
}

HermitianMatrix sample_gue(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gue: n must be >= 1");
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> z = rng.complex_normal() * kInvSqrt2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix(h);
}

SkewHermitianMatrix sample_skew_increment(int n, double dt, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_skew_increment: n must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("sample_skew_increment: dt must be > 0");
  const HermitianMatrix g = sample_gue(n, rng);
  const std::complex<double> scale(0.0, std::sqrt(dt / n));
  return SkewHermitianMatrix(scale * g.mat());
}

UnitaryMatrix matrix_exp_skew(const SkewHermitianMatrix& a) {
  const int n = a.dim();
  if (!a.mat().allFinite()) {
    throw std::invalid_argument("matrix_exp_skew: non-finite entries");
  }
  if (n == 1) {
    ComplexMatrix e(1, 1);
    e(0, 0) = std::exp(a.mat()(0, 0));
    return UnitaryMatrix::trusted(std::move(e));
  }
  // iA is Hermitian with real spectrum lambda; exp(A) = V exp(-i lambda) V*.
  const ComplexMatrix herm = std::complex<double>(0.0, 1.0) * a.mat();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd phases(n);
  for (int i = 0; i < n; ++i) {
    phases(i) = std::polar(1.0, -es.eigenvalues()(i));
  }
  ComplexMatrix e = v * phases.asDiagonal() * v.adjoint();
  return UnitaryMatrix::trusted(std::move(e));
}

std::vector<double> eigenangles(const UnitaryMatrix& u) {
  const int n = u.dim();
  std::vector<double> angles(n);
  if (n == 1) {
    angles[0] = std::arg(u.mat()(0, 0));
  } else {
    Eigen::ComplexSchur<ComplexMatrix> schur(u.mat(), /*computeU=*/false);
    for (int i = 0; i < n; ++i) angles[i] = std::arg(schur.matrixT()(i, i));
  }
  for (double& a : angles) {
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

std::vector<std::complex<double>> traces_of_powers(const UnitaryMatrix& u,
                                                   const std::vector<int>& modes) {
  const int n = u.dim();
  if (modes.empty()) return {};
  int k_max = 0;
  for (int k : modes) {
    if (k < 1) throw std::invalid_argument("traces_of_powers: modes must be >= 1");
    k_max = std::max(k_max, k);
  }
  // Unit-modulus eigenvalues, renormalized against roundoff drift.
  std::vector<std::complex<double>> z(n);
  if (n == 1) {
    z[0] = u.mat()(0, 0) / std::abs(u.mat()(0, 0));
  } else {
    Eigen::ComplexSchur<ComplexMatrix> schur(u.mat(), /*computeU=*/false);
    for (int i = 0; i < n; ++i) {
      const std::complex<double> lam = schur.matrixT()(i, i);
      z[i] = lam / std::abs(lam);
    }
  }
  std::vector<std::complex<double>> pow_acc(z);
  std::vector<std::complex<double>> by_power(k_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) {
      for (int i = 0; i < n; ++i) pow_acc[i] *= z[i];
    }
    std::complex<double> tr = 0.0;
    for (int i = 0; i < n; ++i) tr += pow_acc[i];
    by_power[k] = tr;
  }
  std::vector<std::complex<double>> out;
  out.reserve(modes.size());
  for (int k : modes) out.push_back(by_power[k]);
  return out;
}

std::vector<ComplexMatrix> skew_basis(int n) {
  if (n < 1) throw std::invalid_argument("skew_basis: n must be >= 1");
  const std::complex<double> i_unit(0.0, 1.0);
  const double inv_sqrt_2n = 1.0 / std::sqrt(2.0 * n);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      ComplexMatrix real_part = ComplexMatrix::Zero(n, n);
      real_part(k, l) = inv_sqrt_2n;
      real_part(l, k) = -inv_sqrt_2n;
      basis.push_back(real_part);
      ComplexMatrix imag_part = ComplexMatrix::Zero(n, n);
      imag_part(k, l) = i_unit * inv_sqrt_2n;
      imag_part(l, k) = i_unit * inv_sqrt_2n;
      basis.push_back(imag_part);
    }
  }
  for (int k = 0; k < n; ++k) {
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    diag(k, k) = i_unit * inv_sqrt_n;
    basis.push_back(diag);
  }
  return basis;
}

UnitaryMatrix nearest_unitary(const ComplexMatrix& m) {
  require_square_finite(m, "nearest_unitary");
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return UnitaryMatrix::trusted(svd.matrixU() * svd.matrixV().adjoint());
}

}  // namespace ubm
