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

#include "revmix/parallel.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace revmix {

namespace {
std::atomic<int> g_workers{1};
}

int worker_count() {
    return g_workers.load();
}

void set_worker_count(int workers) {
    if (workers < 1) {
        throw std::invalid_argument("worker count must be positive");
    }
    g_workers.store(workers);
}

void parallel_for(uint64_t count, const std::function<void(uint64_t, uint64_t)> &body) {
    uint64_t workers = std::min<uint64_t>(worker_count(), count);
    if (workers <= 1 || count < 1024) {
        if (count > 0) {
            body(0, count);
        }
        return;
    }
    uint64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (uint64_t w = 0; w < workers; w++) {
        uint64_t begin = w * chunk;
        uint64_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        threads.emplace_back([&, w, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace revmix
