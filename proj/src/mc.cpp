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

#include "ubm/mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ubm {

namespace {
constexpr long long kBlockSize = 64;
}

McSummary run_replicated(std::uint64_t master_seed, long long replicas, int n_stats,
                         int workers,
                         const std::function<void(long long, RngStream&, std::span<double>)>& fn) {
  if (replicas < 2) throw std::invalid_argument("run_replicated: need at least 2 replicas");
  if (n_stats < 1) throw std::invalid_argument("run_replicated: need at least 1 statistic");
  if (workers < 1) workers = 1;

  const long long n_blocks = (replicas + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<double>> block_sum(n_blocks, std::vector<double>(n_stats, 0.0));
  std::vector<std::vector<double>> block_sumsq(n_blocks, std::vector<double>(n_stats, 0.0));

  std::atomic<long long> next_block{0};
  auto work = [&]() {
    std::vector<double> stats(n_stats);
    for (;;) {
      const long long b = next_block.fetch_add(1);
      if (b >= n_blocks) break;
      const long long lo = b * kBlockSize;
      const long long hi = std::min(replicas, lo + kBlockSize);
      for (long long r = lo; r < hi; ++r) {
        RngStream rng(master_seed, static_cast<std::uint64_t>(r));
        fn(r, rng, stats);
        for (int s = 0; s < n_stats; ++s) {
          block_sum[b][s] += stats[s];
          block_sumsq[b][s] += stats[s] * stats[s];
        }
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  McSummary out;
  out.replicas = replicas;
  out.mean.assign(n_stats, 0.0);
  out.sem.assign(n_stats, 0.0);
  std::vector<double> sumsq(n_stats, 0.0);
  for (long long b = 0; b < n_blocks; ++b) {
    for (int s = 0; s < n_stats; ++s) {
      out.mean[s] += block_sum[b][s];
      sumsq[s] += block_sumsq[b][s];
    }
  }
  const double n = static_cast<double>(replicas);
  for (int s = 0; s < n_stats; ++s) {
    out.mean[s] /= n;
    const double var = std::max(0.0, (sumsq[s] - n * out.mean[s] * out.mean[s]) / (n - 1.0));
    out.sem[s] = std::sqrt(var / n);
  }
  return out;
}

}  // namespace ubm
