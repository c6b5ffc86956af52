#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace critline::detail {

/// Runs fn(i) for i in [0, count) over contiguous chunks on worker threads.
/// Each index is written by exactly one worker, so results do not depend on
/// the thread count.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t min_parallel = 64) {
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    if (count < min_parallel || workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t begin = 0; begin < count; begin += chunk) {
        const std::size_t end = std::min(count, begin + chunk);
        jobs.push_back(std::async(std::launch::async, [&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        }));
    }
    for (auto& j : jobs) j.get();
}

}  // namespace critline::detail
