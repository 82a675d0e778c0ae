// Copyright 2026 The replab Authors
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

#ifndef REPLAB_PARALLEL_HPP
#define REPLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace replab {

/// Worker count used by sampling loops; 1 by default. Results never depend on
/// it because every work item owns a derived RNG stream and outputs are merged
/// by index.
unsigned default_workers();
void set_default_workers(unsigned workers);

/// Runs body(i) for i in [0, n) on up to `workers` threads. The first
/// exception thrown by any item is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &body);

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body) {
    parallel_for(n, default_workers(), body);
}

}  // namespace replab

#endif  // REPLAB_PARALLEL_HPP
