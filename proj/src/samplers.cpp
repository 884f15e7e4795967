#include "ewens/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ewens {

FellerBits sample_feller_bits(double theta, count_t n, RngStream& rng) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (n == 0) throw std::invalid_argument("n must be positive");
    std::vector<std::uint8_t> bits(n);
    for (count_t j = 1; j <= n; ++j)
        bits[j - 1] = rng.bernoulli(theta / (theta + double(j - 1))) ? 1 : 0;
    return FellerBits(std::move(bits));
}

namespace {

Partition sample_ewens_crp(double theta, count_t n, RngStream& rng) {
    // Restaurant process on the size multiset: a new element starts a part
    // with probability theta/(theta+j-1), otherwise joins an existing part
    // chosen proportionally to its size.
    std::vector<count_t> sizes;
    for (count_t j = 1; j <= n; ++j) {
        const double u = rng.uniform01() * (theta + double(j - 1));
        if (u < theta || sizes.empty()) {
            sizes.push_back(1);
        } else {
            double r = u - theta;
            size_t idx = 0;
            double cum = 0.0;
            for (; idx + 1 < sizes.size(); ++idx) {
                cum += double(sizes[idx]);
                if (r < cum) break;
            }
            ++sizes[idx];
        }
    }
    return Partition::from_parts(sizes);
}

}  // namespace

Partition sample_ewens(double theta, count_t n, RngStream& rng, EwensMethod method) {
    if (method == EwensMethod::crp) return sample_ewens_crp(theta, n, rng);
    return feller_map(sample_feller_bits(theta, n, rng)).partition;
}

EnumeratedSampler::EnumeratedSampler(const MeasureSpec& m, count_t n, count_t cap)
    : table_(exact_pmf_table(m, n, cap)) {
    cumulative_.reserve(table_.entries.size());
    double cum = 0.0;
    for (const auto& [p, prob] : table_.entries) {
        cum += prob;
        cumulative_.push_back(cum);
    }
}

std::uint32_t EnumeratedSampler::sample_index(RngStream& rng) const {
    const double u = rng.uniform01() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const size_t idx = size_t(it - cumulative_.begin());
    return std::uint32_t(std::min(idx, cumulative_.size() - 1));
}

Partition EnumeratedSampler::sample(RngStream& rng) const {
    return table_.entries[sample_index(rng)].first;
}

SequentialSampler::SequentialSampler(double theta, const WeightSpec& weight, count_t n)
    : theta_(theta), n_(n), table_(normalizer_recursive(theta, weight, n)) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    theta_zeta_.resize(n);
    for (count_t k = 1; k <= n; ++k) theta_zeta_[k - 1] = theta * multiplicative_zeta(weight, k);
    if (!(table_.at(n) > 0))
        throw std::domain_error("normalizer vanishes; sequential sampling undefined");
}

void SequentialSampler::sample_parts(RngStream& rng, std::vector<count_t>& parts) const {
    parts.clear();
    count_t r = n_;
    while (r > 0) {
        const double target = rng.uniform01() * (double(r) * table_.at(r));
        double cum = 0.0;
        count_t k = r;  // falls through to r if round-off exhausts the scan
        for (count_t j = 1; j <= r; ++j) {
            cum += theta_zeta_[j - 1] * table_.at(r - j);
            if (target < cum) {
                k = j;
                break;
            }
        }
        parts.push_back(k);
        r -= k;
    }
}

Partition SequentialSampler::sample(RngStream& rng) const {
    std::vector<count_t> parts;
    sample_parts(rng, parts);
    return Partition::from_parts(parts);
}

ConditionedLcsSampler::ConditionedLcsSampler(const LcsSpec& spec, count_t n)
    : theta_(spec.theta), n_(n), y_pmf_(spec.y_pmf) {
    if (spec.max_index() < n)
        throw std::invalid_argument("spec must store pmfs for indices 1..n");
    for (count_t i = 1; i <= n; ++i)
        if (y_pmf_[i - 1].empty()) throw std::invalid_argument("empty pmf row");
    forward_.assign(n + 1, std::vector<double>(n + 1, 0.0));
    forward_[0][0] = 1.0;
    for (count_t i = 1; i <= n; ++i) {
        const auto& pmf = y_pmf_[i - 1];
        for (count_t s = 0; s <= n; ++s) {
            double acc = 0.0;
            const count_t lmax = std::min<count_t>(pmf.size() - 1, s / i);
            for (count_t l = 0; l <= lmax; ++l)
                acc += pmf[l] * forward_[i - 1][s - i * l];
            forward_[i][s] = acc;
        }
    }
    if (!(forward_[n][n] > 0))
        throw std::domain_error("conditioning event has probability zero");
}

Partition ConditionedLcsSampler::sample(RngStream& rng) const {
    std::vector<std::pair<count_t, count_t>> entries;
    count_t s = n_;
    for (count_t i = n_; i >= 1; --i) {
        const auto& pmf = y_pmf_[i - 1];
        const count_t lmax = std::min<count_t>(pmf.size() - 1, s / i);
        const double target = rng.uniform01() * forward_[i][s];
        double cum = 0.0;
        count_t chosen = lmax;
        for (count_t l = 0; l <= lmax; ++l) {
            cum += pmf[l] * forward_[i - 1][s - i * l];
            if (target < cum) {
                chosen = l;
                break;
            }
        }
        if (chosen > 0) entries.emplace_back(i, chosen);
        s -= i * chosen;
    }
    if (s != 0) throw std::logic_error("backward sampling failed to exhaust the target");
    return Partition::from_entries(n_, std::move(entries));
}

WeightedEstimate importance_estimate(const MeasureSpec& m, count_t n,
                                     const std::function<double(const Partition&)>& f,
                                     count_t n_samples, std::uint64_t seed,
                                     std::uint64_t stream_base, Exec exec) {
    if (n_samples < 2) throw std::invalid_argument("need at least two samples");
    const bool unit_weights = std::holds_alternative<ConstantWeight>(m.weight);
    std::vector<double> w(n_samples), fx(n_samples);
    for_each_index(exec, n_samples, [&](std::uint64_t j) {
        RngStream rng(seed, stream_base + j);
        const Partition p = feller_map(sample_feller_bits(m.theta, n, rng)).partition;
        fx[j] = f(p);
        w[j] = unit_weights ? 1.0 : weight_eval(m.weight, p);
    });
    const double sum_w = pairwise_sum(w);
    if (!(sum_w > 0))
        throw std::domain_error("all importance weights are zero in this batch");
    std::vector<double> scratch(n_samples);
    for (count_t j = 0; j < n_samples; ++j) scratch[j] = w[j] * fx[j];
    const double value = pairwise_sum(scratch) / sum_w;
    for (count_t j = 0; j < n_samples; ++j) {
        const double dev = w[j] * (fx[j] - value);
        scratch[j] = dev * dev;
    }
    const double std_error = std::sqrt(pairwise_sum(scratch)) / sum_w;
    for (count_t j = 0; j < n_samples; ++j) scratch[j] = w[j] * w[j];
    const double ess = sum_w * sum_w / pairwise_sum(scratch);
    return WeightedEstimate{value, std_error, ess, n_samples};
}

}  // namespace ewens
