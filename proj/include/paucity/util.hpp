#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <random>
#include <thread>
#include <vector>

namespace paucity {

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Splits [begin, end) into up to `threads` contiguous chunks and runs
// fn(chunk_begin, chunk_end) -> R on each. Results come back in chunk
// order, so any merge of them is independent of the worker count.
template <typename R, typename Fn>
std::vector<R> run_chunks(long long begin, long long end, unsigned threads, Fn fn) {
    std::vector<R> results;
    if (begin >= end) return results;
    long long n = end - begin;
    long long nchunks = std::min<long long>(threads == 0 ? 1 : threads, n);
    if (nchunks <= 1) {
        results.push_back(fn(begin, end));
        return results;
    }
    results.resize(nchunks);
    std::vector<std::exception_ptr> errors(nchunks);
    std::vector<std::thread> workers;
    for (long long c = 0; c < nchunks; ++c) {
        long long b = begin + n * c / nchunks;
        long long e = begin + n * (c + 1) / nchunks;
        workers.emplace_back([&, c, b, e] {
            try {
                results[c] = fn(b, e);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return results;
}

// Seeded PRNG for reproducible sampling. mt19937_64 has a fixed standard
// output sequence; bounds are applied by modulo so samples reproduce
// across platforms and standard libraries.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    long long int_in(long long lo, long long hi) {  // inclusive
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(gen_() % span);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace paucity
