// Copyright 2026 The revmix Authors.
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

#ifndef REVMIX_PARALLEL_H
#define REVMIX_PARALLEL_H

#include <cstdint>
#include <functional>

namespace revmix {

/// Number of worker threads used by parallel loops. Defaults to 1.
int worker_count();
void set_worker_count(int workers);

/// Calls body(begin, end) over a partition of [0, count). Each index is handled
/// by exactly one call, so bodies that write only their own indices give
/// results independent of the worker count.
void parallel_for(uint64_t count, const std::function<void(uint64_t, uint64_t)> &body);

}  // namespace revmix

#endif
