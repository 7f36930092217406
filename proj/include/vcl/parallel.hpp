// Copyright 2026 The vcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file
/// Tiny fork-join helper for deterministic parallel searches. Work is split
/// into contiguous index ranges; callers merge per-range results in range
/// order, so output never depends on scheduling.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace vcl {

/// Worker count: VCL_JOBS if set, else the requested value, else hardware
/// concurrency (at least 1).
inline unsigned resolve_jobs(unsigned requested = 0) {
  if (const char* env = std::getenv("VCL_JOBS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(chunk_index, begin, end) for `jobs` contiguous chunks of [0, n).
/// Exceptions from workers are rethrown (first chunk wins).
template <class Fn>
void parallel_chunks(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  const std::size_t chunks = std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1));
  if (chunks <= 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    threads.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace vcl
