// Copyright 2026 The epsfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef EPSFC_SRC_PARALLEL_HPP
#define EPSFC_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace epsfc::detail {

/// Runs `work(chunk)` for chunk = 0..chunks-1 on up to `jobs` threads.
template <typename Work>
void run_chunks(std::size_t chunks, std::size_t jobs, Work&& work) {
  jobs = std::max<std::size_t>(1, std::min(jobs, chunks));
  if (jobs == 1) {
    for (std::size_t c = 0; c < chunks; ++c) work(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t c; (c = next.fetch_add(1)) < chunks;) work(c);
    });
}

}  // namespace epsfc::detail

#endif  // EPSFC_SRC_PARALLEL_HPP
