// Copyright 2026 The Expodesign Authors.
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

#ifndef EXPODESIGN_PARALLEL_H_
#define EXPODESIGN_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace expodesign {

// Worker count: EXPODESIGN_THREADS if set to a positive integer, otherwise
// the hardware concurrency.
inline size_t DefaultThreadCount() {
  if (const char* env = std::getenv("EXPODESIGN_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<size_t>(value);
  }
  return std::max<size_t>(1, std::thread::hardware_concurrency());
}

// Calls body(index) for index in [0, count), split into contiguous chunks
// across `threads` workers. Results must be written by index; the call order
// within and across chunks is unspecified.
template <typename Body>
void ParallelFor(size_t count, size_t threads, Body&& body) {
  threads = std::clamp<size_t>(threads, 1, std::max<size_t>(count, 1));
  if (threads == 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const size_t chunk = (count + threads - 1) / threads;
  for (size_t t = 0; t < threads; ++t) {
    const size_t begin = t * chunk;
    const size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([begin, end, &body] {
      for (size_t i = begin; i < end; ++i) body(i);
    });
  }
}

}  // namespace expodesign

#endif  // EXPODESIGN_PARALLEL_H_
