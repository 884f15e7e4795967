#pragma once
// Exact probability evaluation for the theta-weighted partition measure and
// its weighted perturbations. Conventions:
//   base(a)   = prod_i theta^{a_i} / (i^{a_i} a_i!)
//   Z_n       = theta^(n) / n!            (so sum over partitions of base = Z_n)
//   pmf(a)    = base(a) / Z_n             (unweighted)
//   pmf_w(a)  = eta(a) base(a) / Z        (Z = sum of eta * base, supplied or
//                                          computed by the normalizers below)
// pmf evaluation goes through log space so that values stay finite and
// accurate for n well beyond the range where n! overflows.

#include <vector>

#include "ewens/partition.hpp"
#include "ewens/weights.hpp"

namespace ewens {

struct MeasureSpec {
    double theta = 1.0;
    WeightSpec weight = ConstantWeight{};
};

inline constexpr count_t kEnumerationCap = 45;

// theta (theta+1) ... (theta+n-1); empty product = 1.
double rising_factorial(double theta, count_t n);
double log_rising_factorial(double theta, count_t n);

// log prod_i theta^{a_i} / (i^{a_i} a_i!)
double log_ewens_base(double theta, const Partition& p);

double log_ewens_pmf(double theta, const Partition& p);
double ewens_pmf(double theta, const Partition& p);

// eta(a) * exp(log base) / Z with caller-supplied Z > 0.
double weighted_pmf(const MeasureSpec& m, const Partition& p, double Z);

// Z = sum over all partitions of n of eta(a) * base(a), by enumeration.
// Capacity error above the cap.
double normalizer_enumerate(const MeasureSpec& m, count_t n, count_t cap = kEnumerationCap);

// h_n = sum over partitions of n of prod (theta zeta_i)^{a_i} / (i^{a_i} a_i!),
// i.e. the unnormalized mass under a multiplicative-family weight. h_0 = 1.
struct NormalizerTable {
    double theta = 1.0;
    std::vector<double> values;  // h_0 .. h_N

    double at(count_t n) const { return values[n]; }
    count_t max_n() const { return count_t(values.size()) - 1; }
};

// Builds h_0..h_N by the recursion n h_n = sum_{k=1}^n theta zeta_k h_{n-k}.
// Requires a multiplicative-family weight.
NormalizerTable normalizer_recursive(double theta, const WeightSpec& weight, count_t N);

}  // namespace ewens
