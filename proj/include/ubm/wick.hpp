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

#include <functional>
#include <string>
#include <vector>

#include "ubm/rng.hpp"

namespace ubm::wick {

/// Fixed-point-free involution on {1, ..., 2j} (a perfect matching).
/// Labels are 1-based throughout this module.
class Pairing {
 public:
  /// Builds from the image array: image[l-1] is the partner of label l.
  explicit Pairing(std::vector<int> image);

  /// Builds from an explicit list of pairs, e.g. {{1,2},{3,4}}.
  static Pairing from_pairs(int size, const std::vector<std::pair<int, int>>& pairs);

  int size() const { return static_cast<int>(image_.size()); }
  int apply(int label) const { return image_[label - 1]; }

  bool operator==(const Pairing& other) const { return image_ == other.image_; }

 private:
  std::vector<int> image_;
};

/// Visits every pairing of {1, ..., two_j} exactly once, in the
/// smallest-unpaired-first order: the lowest free label is matched with each
/// larger free label in increasing order.  (2j-1)!! pairings in total.
void for_each_pairing(int two_j, const std::function<void(const Pairing&)>& visit);

/// Convenience wrapper collecting the full enumeration.
std::vector<Pairing> all_pairings(int two_j);

/// Doubling lift C_{2j} -> C_{4j}: the lift pairs 2l-1 with 2*pi(l) and
/// 2l with 2*pi(l)-1, so it always matches even labels with odd labels.
Pairing lift_pairing(const Pairing& pi);

/// The fixed wiring pairing on {1, ..., 4j}:
/// (2,3)(4,5)...(2j,1) followed by (2j+1,2j+4)(2j+3,2j+6)...(4j-1,2j+2).
/// Pairs even labels with odd labels for every j >= 1.
Pairing rho(int j);

/// Orbits of the composition (lift ∘ rho) restricted to the even labels
/// {2, 4, ..., 4j}.  Both inputs must pair evens with odds, otherwise the
/// restriction would not be well defined and the call throws.
struct OrbitDecomposition {
  std::vector<std::vector<int>> orbits;  // sorted by smallest element
};
OrbitDecomposition even_orbits(const Pairing& lifted, const Pairing& wiring);

/// Exponent carried by even label w = 2l for the word
/// H U^{s_1} H U^{s_2} ... H U^{s_j}:
///   s_l for l = 1..j, -s_j for l = j+1, and -s_{l-j-1} for l = j+2..2j.
int sigma_hat(const std::vector<int>& sigma, int even_label);

/// One pairing's contribution under the trace-moment evaluation.
/// Every zero orbit exponent contributes a deterministic factor n; the
/// nonzero exponents form the multiplicity vectors fed to the
/// Diaconis-Shahshahani moment.  coeff = 0 when the moment vanishes.
struct DsTerm {
  long long coeff = 0;
  int n_power = 0;
  int n_min = 0;
};
DsTerm ds_evaluate(const std::vector<long long>& orbit_exponents);

/// Integer polynomial in the dimension n, with the smallest n for which the
/// value is claimed exact.
struct MomentPolynomial {
  struct Term {
    long long coeff;
    int power;
    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;  // ascending power, nonzero coefficients
  int n_min = 1;

  long long eval(long long n) const;
  /// "2 + 2*n^2" style rendering, ascending powers.
  std::string poly_string() const;

  bool operator==(const MomentPolynomial&) const = default;
};

/// Exact second moment E|Tr(H U^{s_1} H U^{s_2} ... H U^{s_j})|^2 for H a
/// GUE(n) matrix and U an independent Haar unitary, as a polynomial in n,
/// valid for n >= n_min.  Entries may be any nonzero integers; zeros are
/// rejected because U^0 degenerates the word.
MomentPolynomial wick_second_moment(const std::vector<int>& sigma);

struct McEstimate {
  double mean = 0.0;
  double sem = 0.0;
  long long replicas = 0;
};

/// Monte Carlo estimate of the same second moment from independent (H, U)
/// draws.  Negative exponents are realized as powers of the adjoint.
McEstimate wick_mc_estimate(const std::vector<int>& sigma, int n, long long replicas,
                            RngStream& rng);

/// Batched variant sharing the (H, U) draws across all words: one draw per
/// replica, every word evaluated on it.  Each word's z-score stays valid;
/// estimates are correlated across words.  Replicas are split over workers
/// with one stream per replica and a fixed reduction order.
std::vector<McEstimate> wick_mc_batch(const std::vector<std::vector<int>>& sigmas,
                                      int n, long long replicas,
                                      std::uint64_t master_seed, int workers);

}  // namespace ubm::wick
