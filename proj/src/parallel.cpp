#include "vcsat/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace vcsat {

int worker_count() {
    if (const char* env = std::getenv("VCSAT_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 256) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

int chunk_count(std::uint64_t count) {
    return static_cast<int>(std::min<std::uint64_t>(worker_count(), count));
}

void parallel_chunks(std::uint64_t count,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& body) {
    const int chunks = chunk_count(count);
    if (chunks <= 1) {
        if (count) body(0, count, 0);
        return;
    }
    const std::uint64_t base = count / chunks;
    const std::uint64_t extra = count % chunks;
    auto chunk_begin = [&](int c) {
        return base * c + std::min<std::uint64_t>(c, extra);
    };
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    for (int c = 0; c < chunks; ++c) {
        threads.emplace_back([&, c] {
            try {
                body(chunk_begin(c), chunk_begin(c + 1), c);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace vcsat
