#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "bergman/numerics.hpp"

namespace bergman {

/// Caps the number of worker threads used by sweeps (0 = hardware concurrency).
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(begin, end) over [0, n) in chunks of `chunk`. Chunk boundaries do not
/// depend on the thread count, so chunk-wise reductions are reproducible.
void parallel_for(std::size_t n, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

inline constexpr std::size_t kDefaultChunk = 4096;

/// Sum of term(i) for i in [0, n): compensated within chunks, chunks combined in order.
template <class Term>
double parallel_sum(std::size_t n, Term&& term, std::size_t chunk = kDefaultChunk) {
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(chunks, 0.0);
    parallel_for(n, chunk, [&](std::size_t begin, std::size_t end) {
        CompensatedSum acc;
        for (std::size_t i = begin; i < end; ++i) acc.add(term(i));
        partial[begin / chunk] = acc.value();
    });
    return compensated_sum(partial);
}

/// Maximum of value(i); returns -inf for n == 0. NaN terms propagate.
template <class Value>
double parallel_max(std::size_t n, Value&& value, std::size_t chunk = kDefaultChunk) {
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(chunks, -std::numeric_limits<double>::infinity());
    parallel_for(n, chunk, [&](std::size_t begin, std::size_t end) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = begin; i < end; ++i) {
            const double v = value(i);
            if (v > best || v != v) best = v;
            if (best != best) break;
        }
        partial[begin / chunk] = best;
    });
    double best = -std::numeric_limits<double>::infinity();
    for (double v : partial) {
        if (v != v) return v;
        best = std::max(best, v);
    }
    return best;
}

}  // namespace bergman
