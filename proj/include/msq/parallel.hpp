/*
 * Copyright 2026 The msq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace msq {

/// Worker count: MSQ_THREADS when set to a positive integer, else the
/// hardware concurrency.
inline unsigned worker_count() {
    if (const char *env = std::getenv("MSQ_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs f(0) ... f(n-1) on up to worker_count() threads, items claimed in
/// index order. The first exception thrown by any item is rethrown.
template <class F>
void parallel_for(size_t n, F &&f) {
    size_t workers = std::min<size_t>(worker_count(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto run = [&] {
        for (size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto &t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace msq
