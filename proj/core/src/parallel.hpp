/*
 * SPDX-FileCopyrightText: <text>Copyright 2026 The lrcpa Authors</text>
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lrcpa::detail {

inline unsigned resolve_workers(unsigned requested, std::size_t work_items) {
    unsigned n = requested != 0 ? requested : std::thread::hardware_concurrency();
    n = std::max(1u, n);
    if (work_items < n)
        n = static_cast<unsigned>(std::max<std::size_t>(1, work_items));
    return n;
}

/// Splits [0, n) into `workers` contiguous ranges and runs fn(worker, begin,
/// end) on each, the first range on the calling thread. Rethrows the first
/// exception raised by any worker.
template <typename Fn>
void parallel_ranges(std::size_t n, unsigned workers, Fn &&fn) {
    if (workers <= 1 || n == 0) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    auto guarded = [&](unsigned w, std::size_t b, std::size_t e) {
        try {
            fn(w, b, e);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error)
                error = std::current_exception();
        }
    };
    const std::size_t chunk = (n + workers - 1) / workers;
    {
        std::vector<std::jthread> threads;
        for (unsigned w = 1; w < workers; ++w) {
            const std::size_t b = std::min(n, w * chunk);
            const std::size_t e = std::min(n, b + chunk);
            threads.emplace_back(guarded, w, b, e);
        }
        guarded(0u, 0, std::min(n, chunk));
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace lrcpa::detail
