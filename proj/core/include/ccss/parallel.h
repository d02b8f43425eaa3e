// Copyright 2026 The CCSS Authors
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

#ifndef CCSS_PARALLEL_H_
#define CCSS_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace ccss {

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). Each index is visited exactly once; callers write results to
// per-index slots so output order never depends on scheduling. The first
// exception thrown by any fn(i) is rethrown after all workers join.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn,
                 unsigned threads = 0);

}  // namespace ccss

#endif  // CCSS_PARALLEL_H_
