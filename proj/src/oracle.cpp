#include "ewens/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ewens {

namespace {

void enumerate_rec(count_t remaining, count_t max_part, std::vector<count_t>& parts,
                   const std::function<void(const Partition&)>& fn) {
    if (remaining == 0) {
        fn(Partition::from_parts(parts));
        return;
    }
    for (count_t part = std::min(remaining, max_part); part >= 1; --part) {
        parts.push_back(part);
        enumerate_rec(remaining - part, part, parts, fn);
        parts.pop_back();
    }
}

}  // namespace

void for_each_partition(count_t n, const std::function<void(const Partition&)>& fn) {
    if (n > kMaxPartitionEnumN) throw std::length_error("n exceeds the partition enumeration cap");
    std::vector<count_t> parts;
    parts.reserve(n);
    enumerate_rec(n, n, parts, fn);
}

std::vector<Partition> enumerate_partitions(count_t n) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

count_t partition_count(count_t n) {
    // ways[m] = partitions of m with parts <= current k
    std::vector<count_t> ways(n + 1, 0);
    ways[0] = 1;
    for (count_t k = 1; k <= n; ++k)
        for (count_t m = k; m <= n; ++m) ways[m] += ways[m - k];
    return ways[n];
}

double ExactPmfTable::prob_of(const Partition& p) const {
    for (const auto& [q, prob] : entries)
        if (q == p) return prob;
    throw std::invalid_argument("partition not present in table");
}

ExactPmfTable exact_pmf_table(const MeasureSpec& m, count_t n, count_t cap) {
    const double Z = normalizer_enumerate(m, n, cap);
    if (!(Z > 0)) throw std::domain_error("all weights vanish; measure undefined");
    ExactPmfTable table;
    table.n = n;
    table.theta = m.theta;
    table.weight_digest = weight_digest(m.weight);
    for_each_partition(n, [&](const Partition& p) {
        table.entries.emplace_back(p, weighted_pmf(m, p, Z));
    });
    return table;
}

namespace {

using EntryKey = std::vector<std::pair<count_t, count_t>>;

std::map<EntryKey, std::uint32_t> index_by_entries(const std::vector<Partition>& parts) {
    std::map<EntryKey, std::uint32_t> index;
    for (std::uint32_t i = 0; i < parts.size(); ++i) index.emplace(parts[i].entries(), i);
    return index;
}

void check_sweep_range(double theta, count_t n) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (n == 0 || n > kMaxStringSweepN)
        throw std::length_error("n exceeds the string sweep cap");
}

}  // namespace

ExactPmfTable exact_feller_pushforward(double theta, count_t n, Exec exec) {
    check_sweep_range(theta, n);
    const auto parts = enumerate_partitions(n);
    const auto index = index_by_entries(parts);

    std::vector<double> succ(n + 1), fail(n + 1);
    for (count_t j = 2; j <= n; ++j) {
        succ[j] = theta / (theta + double(j - 1));
        fail[j] = 1.0 - succ[j];
    }

    const std::uint64_t total = std::uint64_t(1) << (n - 1);
    const std::uint64_t blocks = total >= 128 ? 64 : 1;
    std::vector<std::vector<double>> acc(blocks, std::vector<double>(parts.size(), 0.0));

    for_each_index(exec, blocks, [&](std::uint64_t b) {
        const std::uint64_t lo = total / blocks * b;
        const std::uint64_t hi = (b + 1 == blocks) ? total : total / blocks * (b + 1);
        std::vector<count_t> counts(n);
        EntryKey key;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            std::fill(counts.begin(), counts.end(), 0);
            double mass = 1.0;
            count_t last = 1;
            for (count_t j = 2; j <= n; ++j) {
                if ((mask >> (j - 2)) & 1u) {
                    mass *= succ[j];
                    ++counts[j - last - 1];
                    last = j;
                } else {
                    mass *= fail[j];
                }
            }
            ++counts[n - last];
            key.clear();
            for (count_t i = 0; i < n; ++i)
                if (counts[i] > 0) key.emplace_back(i + 1, counts[i]);
            acc[b][index.at(key)] += mass;
        }
    });

    ExactPmfTable table;
    table.n = n;
    table.theta = theta;
    table.weight_digest = weight_digest(WeightSpec{ConstantWeight{1.0}});
    table.entries.reserve(parts.size());
    for (std::uint32_t i = 0; i < parts.size(); ++i) {
        double prob = 0.0;
        for (std::uint64_t b = 0; b < blocks; ++b) prob += acc[b][i];
        table.entries.emplace_back(parts[i], prob);
    }
    return table;
}

namespace {

boost::multiprecision::cpp_int factorial_big(count_t n) {
    boost::multiprecision::cpp_int f = 1;
    for (count_t j = 2; j <= n; ++j) f *= j;
    return f;
}

}  // namespace

std::vector<bigrational> ewens_pmf_rational(std::int64_t theta_num, std::int64_t theta_den,
                                            count_t n) {
    if (theta_num <= 0 || theta_den <= 0)
        throw std::invalid_argument("rational theta must be positive");
    if (n > kMaxStringSweepN) throw std::length_error("n exceeds the string sweep cap");
    const bigrational theta(theta_num, theta_den);
    bigrational rising = 1;
    for (count_t j = 0; j < n; ++j) rising *= theta + j;
    const bigrational front = bigrational(factorial_big(n)) / rising;
    std::vector<bigrational> out;
    for_each_partition(n, [&](const Partition& p) {
        bigrational pmf = front;
        p.for_each_entry([&](count_t size, count_t mult) {
            bigrational factor = theta / size;
            for (count_t r = 0; r < mult; ++r) pmf *= factor;
            pmf /= bigrational(factorial_big(mult));
        });
        out.push_back(pmf);
    });
    return out;
}

std::vector<bigrational> exact_feller_pushforward_rational(std::int64_t theta_num,
                                                           std::int64_t theta_den, count_t n) {
    if (theta_num <= 0 || theta_den <= 0)
        throw std::invalid_argument("rational theta must be positive");
    if (n == 0 || n > kMaxStringSweepN) throw std::length_error("n exceeds the string sweep cap");
    const auto parts = enumerate_partitions(n);
    const auto index = index_by_entries(parts);
    std::vector<bigrational> succ(n + 1), fail(n + 1);
    for (count_t j = 2; j <= n; ++j) {
        // theta/(theta + j - 1) with theta = num/den
        succ[j] = bigrational(theta_num, theta_num + std::int64_t(j - 1) * theta_den);
        fail[j] = 1 - succ[j];
    }
    std::vector<bigrational> acc(parts.size(), 0);
    const std::uint64_t total = std::uint64_t(1) << (n - 1);
    std::vector<count_t> counts(n);
    EntryKey key;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::fill(counts.begin(), counts.end(), 0);
        bigrational mass = 1;
        count_t last = 1;
        for (count_t j = 2; j <= n; ++j) {
            if ((mask >> (j - 2)) & 1u) {
                mass *= succ[j];
                ++counts[j - last - 1];
                last = j;
            } else {
                mass *= fail[j];
            }
        }
        ++counts[n - last];
        key.clear();
        for (count_t i = 0; i < n; ++i)
            if (counts[i] > 0) key.emplace_back(i + 1, counts[i]);
        acc[index.at(key)] += mass;
    }
    return acc;
}

double total_variation(const ExactPmfTable& a, const ExactPmfTable& b) {
    if (a.n != b.n || a.entries.size() != b.entries.size())
        throw std::invalid_argument("tables cover different partition sets");
    double dist = 0.0;
    for (size_t i = 0; i < a.entries.size(); ++i)
        dist += std::abs(a.entries[i].second - b.entries[i].second);
    return 0.5 * dist;
}

double exact_expectation(const MeasureSpec& m,
                         const std::function<double(const Partition&)>& f, count_t n,
                         count_t cap) {
    if (n > cap) throw std::length_error("n exceeds the enumeration cap");
    double mass = 0.0, weighted = 0.0;
    for_each_partition(n, [&](const Partition& p) {
        const double eta = weight_eval(m.weight, p);
        if (eta == 0.0) return;
        const double w = eta * std::exp(log_ewens_base(m.theta, p));
        mass += w;
        weighted += w * f(p);
    });
    if (!(mass > 0)) throw std::domain_error("all weights vanish; expectation undefined");
    return weighted / mass;
}

std::pair<std::vector<double>, std::vector<double>> exact_istar_pmf(double theta, count_t n) {
    check_sweep_range(theta, n);
    std::vector<double> succ(n + 1), fail(n + 1);
    for (count_t j = 2; j <= n; ++j) {
        succ[j] = theta / (theta + double(j - 1));
        fail[j] = 1.0 - succ[j];
    }
    std::vector<double> exhaustive(n, 0.0);
    const std::uint64_t total = std::uint64_t(1) << (n - 1);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        double mass = 1.0;
        count_t last = 1;
        for (count_t j = 2; j <= n; ++j) {
            if ((mask >> (j - 2)) & 1u) {
                mass *= succ[j];
                last = j;
            } else {
                mass *= fail[j];
            }
        }
        exhaustive[n - last] += mass;  // final gap size = n + 1 - last
    }
    // P[gap = k] = prod_{j=n-k+2}^{n} (j-1)/(theta+j-1) * theta/(theta+n-k)
    std::vector<double> formula(n, 0.0);
    for (count_t k = 1; k <= n; ++k) {
        double prob = theta / (theta + double(n - k));
        for (count_t j = n - k + 2; j <= n; ++j)
            prob *= double(j - 1) / (theta + double(j - 1));
        formula[k - 1] = prob;
    }
    return {std::move(exhaustive), std::move(formula)};
}

namespace {

// Number of gaps of size `target` among the 1s of the prefix of length m,
// closed by an appended 1 at m+1. Requires at least one 1 in the prefix.
count_t gaps_of_size(const std::vector<count_t>& ones, count_t m, count_t target) {
    count_t cnt = 0;
    count_t last = 0;
    for (count_t pos : ones) {
        if (pos > m) break;
        if (last != 0 && pos - last == target) ++cnt;
        last = pos;
    }
    if (last != 0 && m + 1 - last == target) ++cnt;
    return cnt;
}

}  // namespace

std::pair<double, double> alpha_discrepancy_exact(double theta, count_t n, count_t d,
                                                  count_t i) {
    check_sweep_range(theta, n);
    if (i < 1 || i > d || d >= n)
        throw std::invalid_argument("require 1 <= i <= d < n");
    std::vector<double> succ(n + 1), fail(n + 1);
    for (count_t j = 2; j <= n; ++j) {
        succ[j] = theta / (theta + double(j - 1));
        fail[j] = 1.0 - succ[j];
    }
    double exact = 0.0;
    const std::uint64_t total = std::uint64_t(1) << (n - 1);
    std::vector<count_t> ones;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        ones.clear();
        ones.push_back(1);
        double mass = 1.0;
        for (count_t j = 2; j <= n; ++j) {
            if ((mask >> (j - 2)) & 1u) {
                mass *= succ[j];
                ones.push_back(j);
            } else {
                mass *= fail[j];
            }
        }
        if (gaps_of_size(ones, n, i) != gaps_of_size(ones, d, i)) exact += mass;
    }
    const double bound = (2.0 * theta + theta * theta) / (double(d - i) + theta);
    return {exact, bound};
}

std::pair<double, double> exact_eta_ratio(const MeasureSpec& m, count_t n) {
    check_sweep_range(m.theta, n);
    std::vector<double> succ(n + 1), fail(n + 1);
    for (count_t j = 2; j <= n; ++j) {
        succ[j] = m.theta / (m.theta + double(j - 1));
        fail[j] = 1.0 - succ[j];
    }
    double by_strings = 0.0;
    const std::uint64_t total = std::uint64_t(1) << (n - 1);
    std::vector<count_t> counts(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::fill(counts.begin(), counts.end(), 0);
        double mass = 1.0;
        count_t last = 1;
        for (count_t j = 2; j <= n; ++j) {
            if ((mask >> (j - 2)) & 1u) {
                mass *= succ[j];
                ++counts[j - last - 1];
                last = j;
            } else {
                mass *= fail[j];
            }
        }
        ++counts[n - last];
        by_strings += mass * weight_eval(m.weight, Partition::from_counts(n, counts));
    }
    const double z_theta = std::exp(log_rising_factorial(m.theta, n) -
                                    std::lgamma(double(n) + 1.0));
    const double by_ratio = normalizer_enumerate(m, n) / z_theta;
    const double scale = std::max({std::abs(by_strings), std::abs(by_ratio), 1e-300});
    if (std::abs(by_strings - by_ratio) / scale > 1e-10)
        throw std::runtime_error("weight expectation and normalizer ratio disagree");
    return {by_strings, by_ratio};
}

}  // namespace ewens
