#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ulbkit {

/// Worker count: hardware concurrency, capped by ULBKIT_THREADS when set.
inline unsigned thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ULBKIT_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
        } catch (...) {
        }
    }
    return n;
}

/// out[i] = f(in[i]); results keep input order. The first exception is rethrown.
template <class T, class F>
auto parallel_map(const std::vector<T>& in, F f) -> std::vector<decltype(f(in.front()))> {
    using R = decltype(f(in.front()));
    std::vector<R> out(in.size());
    const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(in.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < in.size(); i = next++) {
                try {
                    out[i] = f(in[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace ulbkit
