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

#include "ubm/rng.hpp"

namespace ubm {

using ComplexMatrix = Eigen::MatrixXcd;

/// Max-norm tolerance for ‖U·U* − I‖ accepted by UnitaryMatrix.
inline double unitarity_tol(int n) { return 1e-10 * n; }

/// Square complex matrix with ‖U·U* − I‖_max within unitarity_tol(n).
class UnitaryMatrix {
 public:
  /// Validates the unitarity invariant (O(n^3)); throws std::invalid_argument.
  explicit UnitaryMatrix(ComplexMatrix m);

  /// Wraps a matrix that is unitary by construction, skipping the check.
  static UnitaryMatrix trusted(ComplexMatrix m);

  const ComplexMatrix& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  /// ‖U·U* − I‖_max, for drift monitoring.
  double unitarity_defect() const;

 private:
  struct TrustedTag {};
  UnitaryMatrix(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Exactly Hermitian matrix; arbitrary input is symmetrized on construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m);
  const ComplexMatrix& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  ComplexMatrix m_;
};

/// Exactly skew-Hermitian matrix (A = -A*), antisymmetrized on construction.
class SkewHermitianMatrix {
 public:
  explicit SkewHermitianMatrix(const ComplexMatrix& m);
  const ComplexMatrix& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  ComplexMatrix m_;
};

/// Haar-distributed unitary via complex Ginibre QR with the diagonal phase
/// correction applied to the columns of Q.
UnitaryMatrix sample_haar_unitary(int n, RngStream& rng);

/// GUE(n): real N(0,1) diagonal, off-diagonal entries with independent
/// real/imaginary parts of variance 1/2, Hermitian symmetry exact.
HermitianMatrix sample_gue(int n, RngStream& rng);

/// Brownian increment on skew-Hermitian matrices over a step of length dt,
/// orthonormal w.r.t. <A,B> = n Tr(A B*).  Equal in law to i*sqrt(dt/n)*G
/// with G ~ GUE(n), which is how it is constructed.
SkewHermitianMatrix sample_skew_increment(int n, double dt, RngStream& rng);

/// exp(A) for skew-Hermitian A, via eigendecomposition of the Hermitian
/// matrix iA.  Unitary up to roundoff; exact (std::exp) on 1x1 input.
UnitaryMatrix matrix_exp_skew(const SkewHermitianMatrix& a);

/// Eigenvalue arguments of a unitary matrix, ascending in [0, 2*pi).
std::vector<double> eigenangles(const UnitaryMatrix& u);

/// Tr(U^k) for each requested mode k >= 1, evaluated from the unit-circle
/// eigenvalues so that arbitrary mode sets cost O(n * k_max).
std::vector<std::complex<double>> traces_of_powers(const UnitaryMatrix& u,
                                                   const std::vector<int>& modes);

/// Orthonormal basis of the skew-Hermitian matrices under <A,B> = n Tr(AB*):
/// (E_kl - E_lk)/sqrt(2n), i(E_kl + E_lk)/sqrt(2n) for k < l, and
/// i E_kk / sqrt(n).  The basis satisfies sum_k X_k^2 = -I, which is the
/// identity behind the drift term of the unitary Brownian motion SDE.
std::vector<ComplexMatrix> skew_basis(int n);

/// Projection to the nearest unitary (polar factor via SVD).
UnitaryMatrix nearest_unitary(const ComplexMatrix& m);

}  // namespace ubm
