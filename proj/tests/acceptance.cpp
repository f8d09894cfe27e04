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

// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code.  Usage: acceptance --tool /path/to/ubmtool

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ubm/covariance_oracle.hpp"
#include "ubm/ensembles.hpp"
#include "ubm/experiments.hpp"
#include "ubm/limit_field.hpp"
#include "ubm/mc.hpp"
#include "ubm/sobolev.hpp"
#include "ubm/ubm_sim.hpp"
#include "ubm/wick.hpp"

using namespace ubm;
using ubm::wick::wick_second_moment;

namespace {

std::string g_tool_path;

std::string run_tool_line(const std::string& args) {
  const std::string cmd = g_tool_path + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  char buf[256] = {0};
  std::string line;
  if (fgets(buf, sizeof(buf), pipe)) line = buf;
  pclose(pipe);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
  return line;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// --------------------------------------------------------------------------
// C1: exact Wick polynomials reproduce the worked two-exponent formulas.

bool criterion1(std::string& detail) {
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; b <= 5; ++b) {
      const wick::MomentPolynomial got = wick_second_moment(std::vector<int>{a, b});
      wick::MomentPolynomial want;
      if (a == b) {
        want.terms = {{2LL * a * a, 0}, {2, 2}};
        want.n_min = 2 * a;
      } else {
        want.terms = {{1LL * a * b + std::abs(a - b), 0}, {1, 2}};
        want.n_min = a + b;
      }
      if (!(got == want)) {
        detail = "mismatch at sigma=(" + std::to_string(a) + "," + std::to_string(b) + ")";
        return false;
      }
    }
  }
  const std::string line1 = run_tool_line("wick eval --sigma 1,1");
  if (line1 != "2 + 2*n^2 (valid for n >= 2)") {
    detail = "CLI line for sigma=1,1 was '" + line1 + "'";
    return false;
  }
  const std::string line2 = run_tool_line("wick eval --sigma 3");
  if (line2 != "n (valid for n >= 1)") {
    detail = "CLI line for sigma=3 was '" + line2 + "'";
    return false;
  }
  detail = "25 sigma pairs exact; CLI output verbatim";
  return true;
}

// --------------------------------------------------------------------------
// C2: Monte Carlo agreement for every word with j <= 3, entries in {1,2,3},
// n = 12, 2e5 replicas, |z| <= 4.

bool criterion2(std::string& detail) {
  std::vector<std::vector<int>> sigmas;
  for (int j = 1; j <= 3; ++j) {
    std::vector<int> sigma(j, 1);
    for (;;) {
      sigmas.push_back(sigma);
      int i = j - 1;
      while (i >= 0 && sigma[i] == 3) sigma[i--] = 1;
      if (i < 0) break;
      ++sigma[i];
    }
  }
  const int n = 12;
  const auto rows = run_wick_verify(sigmas, n, 200000, 20202, 1);
  double max_z = 0.0;
  for (const auto& r : rows) {
    if (r.below_threshold) {
      detail = "unexpected below-threshold word";
      return false;
    }
    max_z = std::max(max_z, std::abs(r.z));
  }
  detail = std::to_string(rows.size()) + " words, max|z|=" + fmt(max_z);
  return max_z <= 4.0;
}

// --------------------------------------------------------------------------
// C3: static Haar moments E|Tr U^k|^2 = k ^ n.

bool criterion3(std::string& detail) {
  std::vector<int> modes;
  for (int k = 1; k <= 8; ++k) modes.push_back(k);
  const McSummary at8 = run_replicated(
      30303, 100000, 8, 1, [&](long long, RngStream& rng, std::span<double> out) {
        const UnitaryMatrix u = sample_haar_unitary(8, rng);
        const auto tr = traces_of_powers(u, modes);
        for (int i = 0; i < 8; ++i) out[i] = std::norm(tr[i]);
      });
  double max_z = 0.0;
  for (int k = 1; k <= 8; ++k) {
    max_z = std::max(max_z, std::abs(at8.mean[k - 1] - k) / at8.sem[k - 1]);
  }
  const McSummary at4 = run_replicated(
      30304, 100000, 1, 1, [&](long long, RngStream& rng, std::span<double> out) {
        const UnitaryMatrix u = sample_haar_unitary(4, rng);
        out[0] = std::norm(traces_of_powers(u, {6})[0]);
      });
  const double z46 = std::abs(at4.mean[0] - 4.0) / at4.sem[0];
  max_z = std::max(max_z, z46);
  detail = "n=8 k<=8 and n=4 k=6, max|z|=" + fmt(max_z);
  return max_z <= 4.0;
}

// --------------------------------------------------------------------------
// C4: dynamic trace covariance at n = 30 against the closed form.

bool criterion4(std::string& detail) {
  const double dt = 1e-3;
  for (double t : {0.1, 0.5, 1.0}) {
    if (trace_autocov(1, 30, t) != std::exp(-t)) {
      detail = "k=1 oracle is not exactly exp(-t)";
      return false;
    }
  }
  const auto rows = run_cov_check(30, {1, 2, 5}, {0.1, 0.5, 1.0}, dt, 2000, 40404, 1);
  double worst_excess = -1e9;
  double max_z = 0.0;
  for (const auto& r : rows) {
    const double excess = std::abs(r.mc_re - r.oracle) - (4.0 * r.sem + 5.0 * dt);
    worst_excess = std::max(worst_excess, excess);
    max_z = std::max(max_z, std::abs(r.z));
  }
  detail = "9 (k,t) cells, max|z|=" + fmt(max_z) +
           ", worst margin to 4*sem+5*dt: " + fmt(-worst_excess);
  return worst_excess <= 0.0;
}

// --------------------------------------------------------------------------
// C5: increment mean-square bound 4 k^2 t on a deterministic sweep.

bool criterion5(std::string& detail) {
  long long violations = 0;
  for (int k = 1; k <= 20; ++k) {
    for (int n = 1; n <= 20; ++n) {
      for (int i = 1; i <= 100; ++i) {
        const double t = (i / 101.0) / k;
        if (increment_msd(k, n, t) > 4.0 * k * k * t) ++violations;
      }
    }
  }
  detail = "40000 (k,n,t) points, " + std::to_string(violations) + " violations";
  return violations == 0;
}

// --------------------------------------------------------------------------
// C6: series vs closed form within the analytic tail bound, plus the
// alternating-series point at angle gap pi.

bool criterion6(std::string& detail) {
  const auto rows = run_gff_check(200, 20, 60606);
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (!rows[i].within) {
      detail = "random point " + std::to_string(i) + " outside the tail bound";
      return false;
    }
    worst_ratio = std::max(worst_ratio, rows[i].abs_err / rows[i].tail_bound);
  }
  const auto& alt = rows.back();
  if (alt.abs_err > 1e-5) {
    detail = "alternating point error " + fmt(alt.abs_err) + " > 1e-5";
    return false;
  }
  detail = "20 random points (worst err/tail " + fmt(worst_ratio) +
           "), alternating err " + fmt(alt.abs_err);
  return true;
}

// --------------------------------------------------------------------------
// C7: coefficient autocovariance at n = 50 matches the finite-n oracle, and
// the finite-n oracle is within 5% of the limit e^{-kt}/k for k <= 3, t <= 1.

bool criterion7(std::string& detail) {
  double max_gap = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (int i = 1; i <= 100; ++i) {
      const double t = i / 100.0;
      const double finite_n = trace_autocov(k, 50, t) / (k * k);
      const double limit = limit_coeff_autocov(k, t).real();
      max_gap = std::max(max_gap, std::abs(finite_n - limit) / limit);
    }
  }
  if (max_gap > 0.05) {
    detail = "analytic gap " + fmt(max_gap) + " exceeds 5%";
    return false;
  }
  // Coefficient products are trace products over k^2, so the z-scores of
  // the trace comparison carry over verbatim.
  const auto rows = run_cov_check(50, {1, 2, 3}, {0.2, 0.6, 1.0}, 2e-3, 1000, 70707, 1);
  double max_z = 0.0;
  for (const auto& r : rows) max_z = std::max(max_z, std::abs(r.z));
  detail = "analytic gap " + fmt(max_gap) + " (<5%), MC max|z|=" + fmt(max_z);
  return max_z <= 4.0;
}

// --------------------------------------------------------------------------
// C8: Monte Carlo tensor norm vs the exact decomposition at n = 16, 32, 64.

bool criterion8(std::string& detail) {
  const int grid = 512;
  const double T = 1.0;
  const double dt = T / (grid - 1);
  const auto rows = run_sobolev_scan({16, 32, 64}, 0.3, 0.4, 256, T, grid, dt, 64, 80808, 1);
  double max_z = 0.0;
  for (const auto& r : rows) {
    // 4 stderr plus the documented integrator bias allowance 5*dt*exact;
    // truncation and quadrature cancel because the oracle shares the grid
    // and the cutoff.
    if (std::abs(r.mc_mean - r.exact) > 4.0 * r.mc_sem + 5.0 * dt * r.exact) {
      detail = "n=" + std::to_string(r.n) + " off by " + fmt(std::abs(r.mc_mean - r.exact)) +
               " (sem " + fmt(r.mc_sem) + ")";
      return false;
    }
    max_z = std::max(max_z, std::abs(r.z));
  }
  if (!(rows[0].exact <= rows[1].exact && rows[1].exact <= rows[2].exact)) {
    detail = "exact values not non-decreasing in n";
    return false;
  }
  if (!(rows[2].exact - rows[1].exact < rows[1].exact - rows[0].exact)) {
    detail = "exact values not converging in n";
    return false;
  }
  detail = "n in {16,32,64}: max|z|=" + fmt(max_z) + ", exact " + fmt(rows[0].exact) +
           " <= " + fmt(rows[1].exact) + " <= " + fmt(rows[2].exact) + " (gaps shrink)";
  return true;
}

// --------------------------------------------------------------------------
// C9: combinatorial invariants of the pairing machinery.

bool criterion9(std::string& detail) {
  for (int j = 1; j <= 7; ++j) {
    long long want = 1;
    for (int i = 3; i <= 2 * j - 1; i += 2) want *= i;
    long long count = 0;
    bool parity_ok = true;
    const wick::Pairing wiring = wick::rho(j);
    wick::for_each_pairing(2 * j, [&](const wick::Pairing& pi) {
      ++count;
      const wick::Pairing lifted = wick::lift_pairing(pi);
      for (int l = 1; l <= 4 * j; ++l) {
        if ((l + lifted.apply(l)) % 2 == 0) parity_ok = false;
      }
      // Even labels must map to even labels under lift(rho(.)).
      for (int w = 2; w <= 4 * j; w += 2) {
        if (lifted.apply(wiring.apply(w)) % 2 != 0) parity_ok = false;
      }
    });
    if (count != want) {
      detail = "pairing count at j=" + std::to_string(j);
      return false;
    }
    if (!parity_ok) {
      detail = "parity violated at j=" + std::to_string(j);
      return false;
    }
  }

  // Orbit exponent multisets sum to zero.
  const std::vector<std::vector<int>> sigma_cases = {{2}, {1, 3}, {2, -5, 3}, {1, 2, 3, 4}, {3, 1, -2, 2, 1}};
  for (const auto& sigma : sigma_cases) {
    const int j = static_cast<int>(sigma.size());
    const wick::Pairing wiring = wick::rho(j);
    bool ok = true;
    wick::for_each_pairing(2 * j, [&](const wick::Pairing& pi) {
      const auto dec = wick::even_orbits(wick::lift_pairing(pi), wiring);
      long long total = 0;
      for (const auto& orbit : dec.orbits) {
        for (int w : orbit) total += wick::sigma_hat(sigma, w);
      }
      if (total != 0) ok = false;
    });
    if (!ok) {
      detail = "orbit exponent sum nonzero";
      return false;
    }
  }

  // Reversal-with-sign-flip symmetry, exact, j <= 4, entries <= 3.
  for (int j = 1; j <= 4; ++j) {
    std::vector<int> sigma(j, 1);
    for (;;) {
      std::vector<int> reversed(sigma.rbegin(), sigma.rend());
      for (int& v : reversed) v = -v;
      if (!(wick_second_moment(sigma) == wick_second_moment(reversed))) {
        detail = "reversal symmetry broken";
        return false;
      }
      int i = j - 1;
      while (i >= 0 && sigma[i] == 3) sigma[i--] = 1;
      if (i < 0) break;
      ++sigma[i];
    }
  }
  detail = "counts (2j-1)!! to j=7, parity, zero sums, reversal symmetry";
  return true;
}

struct Criterion {
  int id;
  std::string name;
  double budget_sec;  // 0 = unstated
  std::function<bool(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--tool") g_tool_path = argv[i + 1];
  }
  if (g_tool_path.empty()) {
    std::cerr << "usage: acceptance --tool /path/to/ubmtool\n";
    return 2;
  }

  const std::vector<Criterion> criteria = {
      {1, "Wick exact values (worked formulas + CLI)", 1.0, criterion1},
      {2, "Wick MC agreement (j<=3, entries<=3, n=12)", 300.0, criterion2},
      {3, "static Haar moments (n=8 k<=8; n=4 k=6)", 0.0, criterion3},
      {4, "dynamic trace covariance (n=30)", 900.0, criterion4},
      {5, "increment bound <= 4k^2t", 1.0, criterion5},
      {6, "GFF series vs closed form", 0.0, criterion6},
      {7, "coefficient convergence to the OU limit (n=50)", 0.0, criterion7},
      {8, "expected tensor norm (n=16,32,64)", 1800.0, criterion8},
      {9, "combinatorial invariant suite", 10.0, criterion9},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_sec > 0.0 && sec > c.budget_sec) {
      ok = false;
      detail += " [over runtime budget " + std::to_string(c.budget_sec) + "s]";
    }
    std::printf("[%s] C%d %s — %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                detail.c_str(), sec);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures;
}
