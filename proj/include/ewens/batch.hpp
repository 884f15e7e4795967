#pragma once
// Batch kernels over per-sample streams: the hot loops behind the Monte
// Carlo verification runs. Each kernel takes an Exec policy; the serial and
// parallel paths produce bitwise-identical outputs because sample j is fully
// determined by stream (seed, stream_base + j) and results land in slot j.

#include <functional>

#include "ewens/samplers.hpp"
#include "ewens/statistics.hpp"

namespace ewens {

// Per-sample scalar statistics at t = 1.
struct BatchStats {
    std::vector<double> num_parts;       // total part count
    std::vector<double> largest_scaled;  // largest part / n
    std::vector<double> log_lcm;
    std::vector<double> log_product;
};

struct BatchRequest {
    bool num_parts = true;
    bool largest_scaled = false;
    bool log_lcm = false;
    bool log_product = false;
};

// Draws N unweighted-measure samples through the coupling string and extracts
// the requested statistics without materializing partitions.
BatchStats ewens_feller_batch(double theta, count_t n, count_t n_samples,
                              std::uint64_t seed, std::uint64_t stream_base, Exec exec,
                              const BatchRequest& request);

// Same statistics through a prebuilt sequential sampler (multiplicative
// weights).
BatchStats sequential_batch(const SequentialSampler& sampler, count_t n_samples,
                            std::uint64_t seed, std::uint64_t stream_base, Exec exec,
                            const BatchRequest& request);

// Largest stick-breaking component per draw.
std::vector<double> pd_largest_batch(double theta, double tol, count_t n_samples,
                                     std::uint64_t seed, std::uint64_t stream_base,
                                     Exec exec);

// Table-index draws for goodness-of-fit counting; `draw` must be a pure
// function of the stream.
std::vector<std::uint32_t> sample_index_batch(
    const std::function<std::uint32_t(RngStream&)>& draw, count_t n_samples,
    std::uint64_t seed, std::uint64_t stream_base, Exec exec);

// Deterministic mean / unbiased variance via pairwise reduction.
double batch_mean(std::span<const double> values);
double batch_variance(std::span<const double> values);

// z-scores a sample by its own mean and sd (ddof = 1).
std::vector<double> studentize(std::span<const double> values);

}  // namespace ewens
