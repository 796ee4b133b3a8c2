#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace treeramsey {

// Runs fn(i) for i in [0, count) on up to hardware_concurrency threads in
// contiguous blocks. fn must only write to per-index state, which keeps the
// results independent of the schedule.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t min_block = 64) {
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, (count + min_block - 1) / std::max<std::size_t>(1, min_block));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t block = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(count, begin + block);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
}

}  // namespace treeramsey
