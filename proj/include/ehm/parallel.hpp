// Copyright 2026 The EHM Authors
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

#ifndef EHM_PARALLEL_HPP_
#define EHM_PARALLEL_HPP_

// Counter-based seed derivation and a fixed-partition parallel loop. Work
// item i always receives the same seed and writes to slot i, so reductions
// done afterwards in index order are independent of the thread count.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ehm {

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for work item `index` of stream `stream` under `master`.
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t stream,
                                   std::uint64_t index) {
  return SplitMix64(SplitMix64(master ^ SplitMix64(stream)) + index);
}

// Resolves a requested thread count: 0 means hardware concurrency.
inline unsigned ResolveThreads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Calls fn(i) for i in [0, n) over `threads` workers in contiguous blocks.
// The first exception thrown by any worker is rethrown on the caller.
inline void ParallelFor(std::size_t n, unsigned threads,
                        const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(ResolveThreads(threads),
                                            static_cast<unsigned>(
                                                std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t block = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ehm

#endif  // EHM_PARALLEL_HPP_
