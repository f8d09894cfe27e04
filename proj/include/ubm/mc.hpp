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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ubm/rng.hpp"

namespace ubm {

struct McSummary {
  std::vector<double> mean;
  std::vector<double> sem;
  long long replicas = 0;
};

/// Runs `fn` once per replica and returns per-statistic sample means and
/// standard errors.  Replica r draws from RngStream(master_seed, r).
///
/// Deterministic by construction regardless of the worker count: replicas
/// are grouped into fixed blocks, each block is accumulated sequentially,
/// and the per-block partial sums are combined in ascending block order.
McSummary run_replicated(std::uint64_t master_seed, long long replicas, int n_stats,
                         int workers,
                         const std::function<void(long long replica, RngStream& rng,
                                                  std::span<double> out)>& fn);

}  // namespace ubm
