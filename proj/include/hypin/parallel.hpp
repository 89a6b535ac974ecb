#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace hypin {

/// Evaluates fn(0) .. fn(count-1) on up to `threads` workers and returns the
/// results in index order. The first exception (lowest index) is rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<Result> results;
    results.reserve(count);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            results.push_back(fn(i));
        }
        return results;
    }
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        slots[i].emplace(fn(i));
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    for (auto& slot : slots) {
        results.push_back(std::move(*slot));
    }
    return results;
}

}  // namespace hypin
