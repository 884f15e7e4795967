#pragma once
// Execution policy for data-parallel kernels. Every parallel kernel has a
// serial twin selected by Exec; the two must produce bitwise-identical
// results, which the tests assert. Parallel loops only ever write to
// per-index slots, and reductions run over fixed block boundaries, so the
// outcome does not depend on the thread count.

#include <cstdint>
#include <span>

namespace ewens {

enum class Exec { serial, parallel };

template <typename F>
void for_each_index(Exec exec, std::uint64_t count, F&& fn) {
    if (exec == Exec::serial) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < std::int64_t(count); ++i) fn(std::uint64_t(i));
    }
}

// Deterministic pairwise summation; depends only on the length, never on
// thread scheduling.
double pairwise_sum(std::span<const double> values);

}  // namespace ewens
