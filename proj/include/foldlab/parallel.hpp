#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace foldlab {

inline int default_threads() {
    if (const char* env = std::getenv("FOLDLAB_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

// Splits [0, n) into at most `threads` contiguous chunks and runs
// f(chunk_index, begin, end) on each. Chunk boundaries depend only on n and
// threads, so per-chunk results can be merged deterministically.
template <class F>
void parallel_chunks(std::size_t n, int threads, int& chunks_out, F f) {
    int chunks = threads < 1 ? 1 : threads;
    if ((std::size_t)chunks > n) chunks = n ? (int)n : 1;
    chunks_out = chunks;
    if (chunks == 1) {
        f(0, (std::size_t)0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    std::size_t per = n / chunks, extra = n % chunks, begin = 0;
    for (int c = 0; c < chunks; ++c) {
        std::size_t len = per + (c < (int)extra ? 1 : 0);
        pool.emplace_back(f, c, begin, begin + len);
        begin += len;
    }
    for (auto& t : pool) t.join();
}

}  // namespace foldlab
