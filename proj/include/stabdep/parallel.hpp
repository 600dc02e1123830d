// Copyright 2026 The stabdep authors
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

#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stabdep {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, count) into contiguous chunks, one per worker. The body must
/// only touch state owned by its own range. The first worker exception is
/// rethrown on the calling thread.
template <typename Fn>
void parallel_for(uint64_t count, int threads, Fn&& body) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count < 2) {
    body(uint64_t{0}, count);
    return;
  }
  const uint64_t workers = std::min<uint64_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (uint64_t w = 0; w < workers; ++w) {
    const uint64_t begin = count * w / workers;
    const uint64_t end = count * (w + 1) / workers;
    pool.emplace_back([&body, &error, &error_mutex, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace stabdep
