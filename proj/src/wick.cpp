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

#include "ubm/wick.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ubm/ensembles.hpp"
#include "ubm/mc.hpp"

namespace ubm::wick {

Pairing::Pairing(std::vector<int> image) : image_(std::move(image)) {
  const int size = static_cast<int>(image_.size());
  if (size < 2 || size % 2 != 0) {
    throw std::invalid_argument("Pairing: size must be even and >= 2");
  }
  for (int l = 1; l <= size; ++l) {
    const int m = image_[l - 1];
    if (m < 1 || m > size || m == l || image_[m - 1] != l) {
      throw std::invalid_argument("Pairing: not a fixed-point-free involution");
    }
  }
}

Pairing Pairing::from_pairs(int size, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> image(size, 0);
  for (const auto& [a, b] : pairs) {
    if (a < 1 || a > size || b < 1 || b > size) {
      throw std::invalid_argument("Pairing::from_pairs: label out of range");
    }
    image[a - 1] = b;
    image[b - 1] = a;
  }
  return Pairing(std::move(image));
}

namespace {

void enumerate_rec(std::vector<int>& image, std::vector<bool>& used, int size,
                   const std::function<void(const Pairing&)>& visit) {
  int first = -1;
  for (int l = 1; l <= size; ++l) {
    if (!used[l]) {
      first = l;
      break;
    }
  }
  if (first < 0) {
    visit(Pairing(image));
    return;
  }
  used[first] = true;
  for (int m = first + 1; m <= size; ++m) {
    if (used[m]) continue;
    used[m] = true;
    image[first - 1] = m;
    image[m - 1] = first;
    enumerate_rec(image, used, size, visit);
    used[m] = false;
  }
  used[first] = false;
}

}  // namespace

void for_each_pairing(int two_j, const std::function<void(const Pairing&)>& visit) {
  if (two_j < 2 || two_j % 2 != 0) {
    throw std::invalid_argument("for_each_pairing: size must be even and >= 2");
  }
  std::vector<int> image(two_j, 0);
  std::vector<bool> used(two_j + 1, false);
  enumerate_rec(image, used, two_j, visit);
}

std::vector<Pairing> all_pairings(int two_j) {
  std::vector<Pairing> out;
  for_each_pairing(two_j, [&](const Pairing& p) { out.push_back(p); });
  return out;
}

Pairing lift_pairing(const Pairing& pi) {
  const int two_j = pi.size();
  std::vector<int> image(2 * two_j, 0);
  for (int l = 1; l <= two_j; ++l) {
    image[(2 * l - 1) - 1] = 2 * pi.apply(l);
    image[(2 * l) - 1] = 2 * pi.apply(l) - 1;
  }
  return Pairing(std::move(image));
}

Pairing rho(int j) {
  if (j < 1) throw std::invalid_argument("rho: j must be >= 1");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(2 * j);
  for (int l = 1; l <= j - 1; ++l) pairs.emplace_back(2 * l, 2 * l + 1);
  pairs.emplace_back(2 * j, 1);
  for (int l = 1; l <= j - 1; ++l) pairs.emplace_back(2 * j + 2 * l - 1, 2 * j + 2 * l + 2);
  pairs.emplace_back(4 * j - 1, 2 * j + 2);
  return Pairing::from_pairs(4 * j, pairs);
}

namespace {

bool pairs_even_with_odd(const Pairing& p) {
  for (int l = 1; l <= p.size(); ++l) {
    if ((l + p.apply(l)) % 2 == 0) return false;
  }
  return true;
}

}  // namespace

OrbitDecomposition even_orbits(const Pairing& lifted, const Pairing& wiring) {
  if (lifted.size() != wiring.size()) {
    throw std::invalid_argument("even_orbits: size mismatch");
  }
  if (!pairs_even_with_odd(lifted) || !pairs_even_with_odd(wiring)) {
    throw std::invalid_argument("even_orbits: inputs must pair even labels with odd labels");
  }
  const int size = lifted.size();
  OrbitDecomposition out;
  std::vector<bool> seen(size + 1, false);
  for (int start = 2; start <= size; start += 2) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    int w = start;
    do {
      seen[w] = true;
      orbit.push_back(w);
      w = lifted.apply(wiring.apply(w));
    } while (w != start);
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

int sigma_hat(const std::vector<int>& sigma, int even_label) {
  const int j = static_cast<int>(sigma.size());
  if (even_label < 2 || even_label > 4 * j || even_label % 2 != 0) {
    throw std::invalid_argument("sigma_hat: label must be even and within {2,...,4j}");
  }
  const int l = even_label / 2;
  if (l <= j) return sigma[l - 1];
  if (l == j + 1) return -sigma[j - 1];
  return -sigma[l - j - 2];
}

DsTerm ds_evaluate(const std::vector<long long>& orbit_exponents) {
  std::map<long long, int> pos;
  std::map<long long, int> neg;
  int zeros = 0;
  for (long long e : orbit_exponents) {
    if (e == 0) {
      ++zeros;
    } else if (e > 0) {
      ++pos[e];
    } else {
      ++neg[-e];
    }
  }
  long long weight_pos = 0;
  long long weight_neg = 0;
  for (const auto& [m, c] : pos) weight_pos += m * c;
  for (const auto& [m, c] : neg) weight_neg += m * c;

  DsTerm term;
  term.n_power = zeros;
  term.n_min = static_cast<int>(std::max(weight_pos, weight_neg));
  if (pos != neg) {
    term.coeff = 0;
    return term;
  }
  long long coeff = 1;
  for (const auto& [m, c] : pos) {
    for (int i = 0; i < c; ++i) coeff *= m;
    for (long long i = 2; i <= c; ++i) coeff *= i;
  }
  term.coeff = coeff;
  return term;
}

long long MomentPolynomial::eval(long long n) const {
  long long value = 0;
  for (const auto& t : terms) {
    long long p = 1;
    for (int i = 0; i < t.power; ++i) p *= n;
    value += t.coeff * p;
  }
  return value;
}

std::string MomentPolynomial::poly_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (i > 0) out += t.coeff < 0 ? " - " : " + ";
    const long long mag = (i > 0 && t.coeff < 0) ? -t.coeff : t.coeff;
    if (t.power == 0) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + "*";
      out += t.power == 1 ? "n" : "n^" + std::to_string(t.power);
    }
  }
  return out;
}

namespace {

void validate_sigma(const std::vector<int>& sigma) {
  if (sigma.empty()) throw std::invalid_argument("sigma must be non-empty");
  for (int s : sigma) {
    if (s == 0) throw std::invalid_argument("sigma entries must be nonzero");
  }
}

}  // namespace

MomentPolynomial wick_second_moment(const std::vector<int>& sigma) {
  validate_sigma(sigma);
  const int j = static_cast<int>(sigma.size());
  const Pairing wiring = rho(j);

  std::map<int, long long> coeff_by_power;
  int n_min = 1;
  for_each_pairing(2 * j, [&](const Pairing& pi) {
    const Pairing lifted = lift_pairing(pi);
    const OrbitDecomposition orbits = even_orbits(lifted, wiring);
    std::vector<long long> exponents;
    exponents.reserve(orbits.orbits.size());
    for (const auto& orbit : orbits.orbits) {
      long long sum = 0;
      for (int w : orbit) sum += sigma_hat(sigma, w);
      exponents.push_back(sum);
    }
    const DsTerm term = ds_evaluate(exponents);
    n_min = std::max(n_min, term.n_min);
    if (term.coeff != 0) coeff_by_power[term.n_power] += term.coeff;
  });

  MomentPolynomial poly;
  poly.n_min = n_min;
  for (const auto& [power, coeff] : coeff_by_power) {
    if (coeff != 0) poly.terms.push_back({coeff, power});
  }
  return poly;
}

namespace {

// Word trace |Tr(H U^{s_1} H U^{s_2} ... H U^{s_j})|^2 for one draw, with
// U powers passed in as a map exponent -> matrix.
double word_norm_sq(const ComplexMatrix& h,
                    const std::map<int, ComplexMatrix>& u_pow,
                    const std::vector<int>& sigma) {
  ComplexMatrix acc = h * u_pow.at(sigma[0]);
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    acc = acc * h * u_pow.at(sigma[i]);
  }
  return std::norm(acc.trace());
}

std::map<int, ComplexMatrix> powers_for(const UnitaryMatrix& u,
                                        const std::vector<int>& exponents) {
  std::map<int, ComplexMatrix> pow;
  const ComplexMatrix& m = u.mat();
  const ComplexMatrix adj = m.adjoint();
  for (int e : exponents) {
    if (pow.count(e)) continue;
    const int a = std::abs(e);
    ComplexMatrix p = e > 0 ? m : adj;
    for (int i = 1; i < a; ++i) p = p * (e > 0 ? m : adj);
    pow.emplace(e, std::move(p));
  }
  return pow;
}

}  // namespace

McEstimate wick_mc_estimate(const std::vector<int>& sigma, int n, long long replicas,
                            RngStream& rng) {
  validate_sigma(sigma);
  if (n < 1) throw std::invalid_argument("wick_mc_estimate: n must be >= 1");
  if (replicas < 2) throw std::invalid_argument("wick_mc_estimate: need >= 2 replicas");
  double sum = 0.0;
  double sumsq = 0.0;
  for (long long r = 0; r < replicas; ++r) {
    const HermitianMatrix h = sample_gue(n, rng);
    const UnitaryMatrix u = sample_haar_unitary(n, rng);
    const auto pow = powers_for(u, sigma);
    const double v = word_norm_sq(h.mat(), pow, sigma);
    sum += v;
    sumsq += v * v;
  }
  McEstimate est;
  est.replicas = replicas;
  est.mean = sum / replicas;
  const double var =
      std::max(0.0, (sumsq - replicas * est.mean * est.mean) / (replicas - 1.0));
  est.sem = std::sqrt(var / replicas);
  return est;
}

std::vector<McEstimate> wick_mc_batch(const std::vector<std::vector<int>>& sigmas,
                                      int n, long long replicas,
                                      std::uint64_t master_seed, int workers) {
  if (sigmas.empty()) return {};
  for (const auto& s : sigmas) validate_sigma(s);
  if (n < 1) throw std::invalid_argument("wick_mc_batch: n must be >= 1");

  std::vector<int> all_exponents;
  for (const auto& s : sigmas) all_exponents.insert(all_exponents.end(), s.begin(), s.end());

  const int n_stats = static_cast<int>(sigmas.size());
  const McSummary summary = run_replicated(
      master_seed, replicas, n_stats, workers,
      [&](long long, RngStream& rng, std::span<double> out) {
        const HermitianMatrix h = sample_gue(n, rng);
        const UnitaryMatrix u = sample_haar_unitary(n, rng);
        const auto u_pow = powers_for(u, all_exponents);
        // P_m = H U^m once per draw; words share prefix products, and the
        // final factor enters through an O(n^2) trace dot.
        std::map<int, ComplexMatrix> head;
        for (const auto& [e, p] : u_pow) head.emplace(e, h.mat() * p);
        std::map<std::vector<int>, ComplexMatrix> prefix;
        for (int w = 0; w < n_stats; ++w) {
          const auto& sigma = sigmas[w];
          const ComplexMatrix& last = head.at(sigma.back());
          if (sigma.size() == 1) {
            out[w] = std::norm(last.trace());
            continue;
          }
          std::vector<int> key(sigma.begin(), sigma.end() - 1);
          auto it = prefix.find(key);
          if (it == prefix.end()) {
            ComplexMatrix acc = head.at(key[0]);
            for (std::size_t i = 1; i < key.size(); ++i) acc = acc * head.at(key[i]);
            it = prefix.emplace(std::move(key), std::move(acc)).first;
          }
          const std::complex<double> tr =
              (it->second.transpose().cwiseProduct(last)).sum();
          out[w] = std::norm(tr);
        }
      });

  std::vector<McEstimate> out(n_stats);
  for (int w = 0; w < n_stats; ++w) {
    out[w] = {summary.mean[w], summary.sem[w], summary.replicas};
  }
  return out;
}

}  // namespace ubm::wick
