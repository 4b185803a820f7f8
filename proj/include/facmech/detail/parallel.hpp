// Copyright 2026 The facmech Authors.
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

#ifndef FACMECH_DETAIL_PARALLEL_HPP_
#define FACMECH_DETAIL_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace facmech::detail {

inline unsigned resolve_workers(unsigned requested, std::size_t tasks) {
  unsigned w = requested != 0 ? requested
                              : std::max(1u, std::thread::hardware_concurrency());
  if (tasks < w) w = static_cast<unsigned>(std::max<std::size_t>(tasks, 1));
  return w;
}

// Splits [0, count) into one contiguous chunk per worker and calls
// fn(begin, end, worker). Results must be merged by the caller in an
// order-independent way. The first exception (lowest worker) is rethrown.
template <typename Fn>
void parallel_chunks(std::size_t count, unsigned workers, Fn&& fn) {
  workers = resolve_workers(workers, count);
  if (workers == 1) {
    fn(std::size_t{0}, count, 0u);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(count, w * chunk);
      const std::size_t end = std::min(count, begin + chunk);
      threads.emplace_back([&, w, begin, end] {
        try {
          fn(begin, end, w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace facmech::detail

#endif  // FACMECH_DETAIL_PARALLEL_HPP_
