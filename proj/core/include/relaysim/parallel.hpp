// SPDX-License-Identifier: Apache-2.0
//
// relaysim — spectral-efficiency engine for multipair two-way massive-MIMO relaying
// Copyright (C) 2026 relaysim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace relaysim {

/// Runs `body(begin, end, chunk_index)` over fixed-size chunks of [0, total).
/// Chunk boundaries depend only on (total, chunk_size), never on the thread
/// count, so per-chunk results combined in chunk order are deterministic.
inline void parallel_chunks(long total, long chunk_size, int threads,
                            const std::function<void(long, long, long)>& body) {
    if (total <= 0) return;
    const long num_chunks = (total + chunk_size - 1) / chunk_size;
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int nt = threads > 0 ? threads : hw;
    nt = static_cast<int>(std::min<long>(nt, num_chunks));

    if (nt <= 1) {
        for (long c = 0; c < num_chunks; ++c)
            body(c * chunk_size, std::min(total, (c + 1) * chunk_size), c);
        return;
    }

    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= num_chunks) return;
            try {
                body(c * chunk_size, std::min(total, (c + 1) * chunk_size), c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace relaysim
