#pragma once
// Random generation of partitions: coupling-string and restaurant-process
// samplers for the unweighted measure, an enumerated exact sampler for any
// weight at small n, a sequential sampler for multiplicative weights, a
// backward sampler for conditioned structures, and self-normalized
// importance estimation over coupling proposals.
//
// Determinism contract: batch work assigns sample j the stream (seed,
// stream_base + j), and all floating reductions run through fixed pairwise
// trees, so results are identical for any worker count.

#include <functional>

#include "ewens/exec.hpp"
#include "ewens/lcs.hpp"
#include "ewens/measures.hpp"
#include "ewens/oracle.hpp"
#include "ewens/partition.hpp"
#include "ewens/rng.hpp"

namespace ewens {

// Independent bits with success probability theta/(theta+j-1); bit 1 is
// always 1.
FellerBits sample_feller_bits(double theta, count_t n, RngStream& rng);

enum class EwensMethod { feller, crp };

// Exact draw from the unweighted measure by either route.
Partition sample_ewens(double theta, count_t n, RngStream& rng, EwensMethod method);

// Categorical draw from an enumerated pmf table (any weight, n within cap).
class EnumeratedSampler {
public:
    EnumeratedSampler(const MeasureSpec& m, count_t n, count_t cap = kEnumerationCap);

    const ExactPmfTable& table() const { return table_; }
    Partition sample(RngStream& rng) const;
    // Index into table entry order; cheaper than materializing the partition.
    std::uint32_t sample_index(RngStream& rng) const;

private:
    ExactPmfTable table_;
    std::vector<double> cumulative_;
};

// Exact draw for multiplicative-family weights via the size-biased first-part
// recursion: P(first part = k | remaining r) = theta zeta_k h_{r-k} / (r h_r).
class SequentialSampler {
public:
    SequentialSampler(double theta, const WeightSpec& weight, count_t n);

    count_t n() const { return n_; }
    const NormalizerTable& table() const { return table_; }
    Partition sample(RngStream& rng) const;
    // Part sizes in draw order, written to `parts` (cleared first).
    void sample_parts(RngStream& rng, std::vector<count_t>& parts) const;

private:
    double theta_;
    count_t n_;
    std::vector<double> theta_zeta_;  // theta * zeta_k
    NormalizerTable table_;
};

// Exact draw from the conditioned law P[Y = a | sum i Y_i = n] by backward
// sampling over the forward table T[i][s] = P[sum_{j<=i} j Y_j = s].
class ConditionedLcsSampler {
public:
    ConditionedLcsSampler(const LcsSpec& spec, count_t n);

    Partition sample(RngStream& rng) const;

private:
    const double theta_;
    count_t n_;
    std::vector<std::vector<double>> y_pmf_;
    std::vector<std::vector<double>> forward_;  // T[i][s]
};

struct WeightedEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double ess = 0.0;  // effective sample size (Sw^2 / sum w^2)
    count_t n_samples = 0;
};

// Self-normalized importance estimate of E[f] under the weighted measure,
// with unweighted-coupling proposals at the measure's own theta:
//   value = sum w_j f_j / sum w_j,  w_j = eta(a_j).
// Constant weights short-circuit to unit weights (the estimator is invariant
// to weight scale), making the value bit-identical to the pairwise mean of f.
WeightedEstimate importance_estimate(const MeasureSpec& m, count_t n,
                                     const std::function<double(const Partition&)>& f,
                                     count_t n_samples, std::uint64_t seed,
                                     std::uint64_t stream_base = 0,
                                     Exec exec = Exec::parallel);

}  // namespace ewens
