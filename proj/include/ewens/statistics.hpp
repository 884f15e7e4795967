#pragma once
// Partition statistics feeding the limit-theorem checks: ordered part
// lengths, the small-part counting path nu_{n,t} = a_1 + ... + a_{floor(n^t)},
// the log-lcm / log-product path over the same thresholds, and the
// sensitivity of each statistic to forcing a prefix of the coupling string.

#include <span>
#include <vector>

#include "ewens/partition.hpp"

namespace ewens {

// Part lengths sorted descending. scaled() divides by n (entries sum to 1).
struct OrderedParts {
    count_t n = 0;
    std::vector<count_t> parts;  // nonincreasing

    std::vector<double> scaled() const;
};

OrderedParts ordered_parts(const Partition& p);

// L1 distance between two ordered part vectors, zero-padded to equal length.
count_t ordered_l1_distance(const OrderedParts& a, const OrderedParts& b);

// floor(n^t) with the endpoint conventions floor(n^0) = 1 and floor(n^1) = n;
// guarded against floating round-off at integer boundaries.
count_t power_threshold(count_t n, double t);

// A statistic evaluated on a t-grid over [0,1].
struct StatPath {
    enum class Kind { raw, normalized };

    std::vector<double> grid;
    std::vector<double> values;
    count_t n = 0;
    Kind kind = Kind::raw;
};

std::vector<double> default_grid();  // 101 equally spaced points

// nu_{n,t}: number of parts of size <= floor(n^t). Normalized form is
// (nu - theta t log n) / sqrt(theta log n); requires n >= 2.
StatPath count_path(const Partition& p, std::span<const double> grid, bool normalize,
                    double theta);

enum class LcmMode { lcm, product };

// log of the lcm (or product) of parts of size <= floor(n^t); the empty set
// gives log 1 = 0. Normalized form is
// (log O - theta t^2 (log n)^2 / 2) / sqrt(theta (log n)^3 / 3).
StatPath loglcm_path(const Partition& p, std::span<const double> grid, LcmMode mode,
                     bool normalize, double theta);

// Values at every integer threshold m = 1..n (finest grid); used by the
// sensitivity sweeps so the path supremum is exact rather than grid-sampled.
std::vector<count_t> count_at_thresholds(const Partition& p, count_t n);
std::vector<double> loglcm_at_thresholds(const Partition& p, count_t n, LcmMode mode);

// Smallest-prime-factor sieve for lcm exponent bookkeeping.
class PrimeSieve {
public:
    explicit PrimeSieve(count_t limit);

    count_t limit() const { return count_t(spf_.size()) - 1; }
    // Appends the (prime, exponent) factorization of x (2 <= x <= limit).
    void factorize(count_t x, std::vector<std::pair<count_t, count_t>>& out) const;

private:
    std::vector<std::uint32_t> spf_;
};

// log lcm of a multiset of part sizes, via per-prime maximum exponents.
double log_lcm_of_parts(std::span<const count_t> parts, const PrimeSieve& sieve);

enum class SensitivityStat {
    ordered_scaled_l1,     // L1 distance of scaled ordered parts
    count_path_sup,        // sup over thresholds of |nu difference|
    loglcm_path_sup,       // sup over thresholds of |log lcm difference|
    logproduct_path_sup,   // sup over thresholds of |log product difference|
};

// || X(bits) - X(force_prefix_ones(bits, d)) || in the statistic's norm.
// d = 0 returns exactly 0.
double prefix_sensitivity(SensitivityStat stat, const FellerBits& bits, count_t d);

}  // namespace ewens
