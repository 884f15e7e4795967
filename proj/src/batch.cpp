#include "ewens/batch.hpp"

#include <cmath>
#include <stdexcept>

namespace ewens {

namespace {

struct PartConsumer {
    const BatchRequest& request;
    const PrimeSieve* sieve;
    std::vector<count_t> parts;  // scratch, only filled when log_lcm is wanted

    count_t num_parts = 0;
    count_t largest = 0;
    double log_product = 0.0;

    void reset() {
        num_parts = 0;
        largest = 0;
        log_product = 0.0;
        parts.clear();
    }

    void add_part(count_t size) {
        ++num_parts;
        largest = std::max(largest, size);
        if (request.log_product) log_product += std::log(double(size));
        if (request.log_lcm) parts.push_back(size);
    }

    void store(BatchStats& stats, count_t n, std::uint64_t j) const {
        if (request.num_parts) stats.num_parts[j] = double(num_parts);
        if (request.largest_scaled) stats.largest_scaled[j] = double(largest) / double(n);
        if (request.log_product) stats.log_product[j] = log_product;
        if (request.log_lcm) stats.log_lcm[j] = log_lcm_of_parts(parts, *sieve);
    }
};

BatchStats make_stats(const BatchRequest& request, count_t n_samples) {
    BatchStats stats;
    if (request.num_parts) stats.num_parts.resize(n_samples);
    if (request.largest_scaled) stats.largest_scaled.resize(n_samples);
    if (request.log_lcm) stats.log_lcm.resize(n_samples);
    if (request.log_product) stats.log_product.resize(n_samples);
    return stats;
}

}  // namespace

BatchStats ewens_feller_batch(double theta, count_t n, count_t n_samples,
                              std::uint64_t seed, std::uint64_t stream_base, Exec exec,
                              const BatchRequest& request) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (n == 0) throw std::invalid_argument("n must be positive");
    std::vector<double> succ(n + 1);
    for (count_t j = 1; j <= n; ++j) succ[j] = theta / (theta + double(j - 1));
    const PrimeSieve sieve(request.log_lcm ? std::max<count_t>(n, 2) : 2);
    BatchStats stats = make_stats(request, n_samples);

    if (exec == Exec::serial) {
        PartConsumer consumer{request, &sieve, {}, 0, 0, 0.0};
        for (std::uint64_t j = 0; j < n_samples; ++j) {
            RngStream rng(seed, stream_base + j);
            consumer.reset();
            count_t last = 0;
            for (count_t pos = 1; pos <= n; ++pos) {
                if (rng.uniform01() < succ[pos]) {
                    if (last != 0) consumer.add_part(pos - last);
                    last = pos;
                }
            }
            consumer.add_part(n + 1 - last);  // last = 1 is guaranteed at pos 1
            consumer.store(stats, n, j);
        }
        return stats;
    }

#pragma omp parallel
    {
        PartConsumer consumer{request, &sieve, {}, 0, 0, 0.0};
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < std::int64_t(n_samples); ++j) {
            RngStream rng(seed, stream_base + std::uint64_t(j));
            consumer.reset();
            count_t last = 0;
            for (count_t pos = 1; pos <= n; ++pos) {
                if (rng.uniform01() < succ[pos]) {
                    if (last != 0) consumer.add_part(pos - last);
                    last = pos;
                }
            }
            consumer.add_part(n + 1 - last);
            consumer.store(stats, n, std::uint64_t(j));
        }
    }
    return stats;
}

BatchStats sequential_batch(const SequentialSampler& sampler, count_t n_samples,
                            std::uint64_t seed, std::uint64_t stream_base, Exec exec,
                            const BatchRequest& request) {
    const count_t n = sampler.n();
    const PrimeSieve sieve(request.log_lcm ? std::max<count_t>(n, 2) : 2);
    BatchStats stats = make_stats(request, n_samples);

    auto run_one = [&](PartConsumer& consumer, std::vector<count_t>& scratch,
                       std::uint64_t j) {
        RngStream rng(seed, stream_base + j);
        sampler.sample_parts(rng, scratch);
        consumer.reset();
        for (count_t part : scratch) consumer.add_part(part);
        consumer.store(stats, n, j);
    };

    if (exec == Exec::serial) {
        PartConsumer consumer{request, &sieve, {}, 0, 0, 0.0};
        std::vector<count_t> scratch;
        for (std::uint64_t j = 0; j < n_samples; ++j) run_one(consumer, scratch, j);
        return stats;
    }

#pragma omp parallel
    {
        PartConsumer consumer{request, &sieve, {}, 0, 0, 0.0};
        std::vector<count_t> scratch;
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < std::int64_t(n_samples); ++j)
            run_one(consumer, scratch, std::uint64_t(j));
    }
    return stats;
}

std::vector<double> pd_largest_batch(double theta, double tol, count_t n_samples,
                                     std::uint64_t seed, std::uint64_t stream_base,
                                     Exec exec) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (!(tol > 0) || tol >= 1) throw std::invalid_argument("tol must lie in (0,1)");
    std::vector<double> out(n_samples);
    for_each_index(exec, n_samples, [&](std::uint64_t j) {
        RngStream rng(seed, stream_base + j);
        double remaining = 1.0, best = 0.0;
        while (remaining >= tol) {
            const double frac = rng.beta_one(theta);
            best = std::max(best, remaining * frac);
            remaining *= 1.0 - frac;
        }
        out[j] = best;
    });
    return out;
}

std::vector<std::uint32_t> sample_index_batch(
    const std::function<std::uint32_t(RngStream&)>& draw, count_t n_samples,
    std::uint64_t seed, std::uint64_t stream_base, Exec exec) {
    std::vector<std::uint32_t> out(n_samples);
    for_each_index(exec, n_samples, [&](std::uint64_t j) {
        RngStream rng(seed, stream_base + j);
        out[j] = draw(rng);
    });
    return out;
}

double batch_mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("empty batch");
    return pairwise_sum(values) / double(values.size());
}

double batch_variance(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("variance needs two values");
    const double mean = batch_mean(values);
    std::vector<double> sq(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        const double dev = values[i] - mean;
        sq[i] = dev * dev;
    }
    return pairwise_sum(sq) / double(values.size() - 1);
}

std::vector<double> studentize(std::span<const double> values) {
    const double mean = batch_mean(values);
    const double sd = std::sqrt(batch_variance(values));
    if (!(sd > 0)) throw std::domain_error("cannot studentize a constant sample");
    std::vector<double> out(values.size());
    for (size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mean) / sd;
    return out;
}

}  // namespace ewens
