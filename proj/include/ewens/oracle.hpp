#pragma once
// Brute-force ground truth at small n: full partition enumeration, exhaustive
// summation over all coupling strings, and the closed-form quantities they
// are checked against. Everything here is the oracle side of a dual-route
// check; keep it independent of the samplers it validates.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ewens/exec.hpp"
#include "ewens/measures.hpp"
#include "ewens/partition.hpp"

namespace ewens {

using bigrational = boost::multiprecision::cpp_rational;

// Capacity caps. Enumeration is O(p(n)) partitions (p(60) ~ 1e6); string
// sweeps are O(2^{n-1}) and capped much lower.
inline constexpr count_t kMaxPartitionEnumN = 60;
inline constexpr count_t kMaxStringSweepN = 20;

// All partitions of n, each exactly once, in the deterministic order produced
// by largest-part-first recursion: (n), (n-1,1), ..., (1^n).
std::vector<Partition> enumerate_partitions(count_t n);
void for_each_partition(count_t n, const std::function<void(const Partition&)>& fn);

// p(n) by dynamic programming; independent of the enumerator.
count_t partition_count(count_t n);

struct ExactPmfTable {
    count_t n = 0;
    double theta = 1.0;
    std::string weight_digest;
    std::vector<std::pair<Partition, double>> entries;  // enumeration order

    double prob_of(const Partition& p) const;
};

// Normalized pmf of the weighted measure by enumeration.
ExactPmfTable exact_pmf_table(const MeasureSpec& m, count_t n, count_t cap = kEnumerationCap);

// Pushforward of the coupling measure: sums the product Bernoulli masses of
// all 2^{n-1} strings with x_1 = 1, grouped by image partition.
ExactPmfTable exact_feller_pushforward(double theta, count_t n, Exec exec = Exec::serial);

// Exact-rational pushforward and pmf for rational theta = num/den; the two
// agree exactly, which the tests assert. Entries follow enumeration order.
std::vector<bigrational> exact_feller_pushforward_rational(std::int64_t theta_num,
                                                           std::int64_t theta_den, count_t n);
std::vector<bigrational> ewens_pmf_rational(std::int64_t theta_num, std::int64_t theta_den,
                                            count_t n);

// Half the L1 distance between two tables over the same n (same entry order).
double total_variation(const ExactPmfTable& a, const ExactPmfTable& b);

// Exact expectation of f under the weighted measure, by enumeration.
double exact_expectation(const MeasureSpec& m,
                         const std::function<double(const Partition&)>& f, count_t n,
                         count_t cap = kEnumerationCap);

// Distribution of the final gap size over strings of length n:
//   .first  — by exhaustive string summation,
//   .second — by the closed product formula
//             P[gap = k] = theta/(theta+n-k) * prod_{j=n-k+2}^{n} (j-1)/(theta+j-1).
std::pair<std::vector<double>, std::vector<double>> exact_istar_pmf(double theta, count_t n);

// Exact P[a_i(n) != a_i(d)] over all strings, paired with the telescoping
// bound (2 theta + theta^2)/(d - i + theta). Requires 1 <= i <= d < n.
std::pair<double, double> alpha_discrepancy_exact(double theta, count_t n, count_t d, count_t i);

// E[eta(a(n))] under the coupling measure by string summation, and the same
// quantity as the normalizer ratio Z_n^{theta,eta} / Z_n^theta by
// enumeration. Throws if the two routes disagree beyond 1e-10 relative.
std::pair<double, double> exact_eta_ratio(const MeasureSpec& m, count_t n);

}  // namespace ewens
