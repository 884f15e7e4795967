#include "ewens/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ewens {

std::vector<double> OrderedParts::scaled() const {
    std::vector<double> out(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) out[i] = double(parts[i]) / double(n);
    return out;
}

OrderedParts ordered_parts(const Partition& p) {
    OrderedParts out;
    out.n = p.n();
    p.for_each_entry([&](count_t size, count_t mult) {
        for (count_t r = 0; r < mult; ++r) out.parts.push_back(size);
    });
    std::reverse(out.parts.begin(), out.parts.end());
    return out;
}

count_t ordered_l1_distance(const OrderedParts& a, const OrderedParts& b) {
    const size_t len = std::max(a.parts.size(), b.parts.size());
    count_t dist = 0;
    for (size_t i = 0; i < len; ++i) {
        const count_t x = i < a.parts.size() ? a.parts[i] : 0;
        const count_t y = i < b.parts.size() ? b.parts[i] : 0;
        dist += x > y ? x - y : y - x;
    }
    return dist;
}

count_t power_threshold(count_t n, double t) {
    if (n == 0) throw std::invalid_argument("threshold requires n >= 1");
    if (t <= 0.0) return 1;
    if (t >= 1.0) return n;
    const double v = std::exp(t * std::log(double(n)));
    const double guarded = v + std::max(1e-9, 1e-12 * v);
    const count_t m = count_t(std::floor(guarded));
    return std::clamp<count_t>(m, 1, n);
}

std::vector<double> default_grid() {
    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[i] = double(i) / 100.0;
    return grid;
}

std::vector<count_t> count_at_thresholds(const Partition& p, count_t n) {
    std::vector<count_t> nu(n, 0);
    p.for_each_entry([&](count_t size, count_t mult) {
        if (size <= n) nu[size - 1] += mult;
    });
    for (count_t m = 1; m < n; ++m) nu[m] += nu[m - 1];
    return nu;
}

StatPath count_path(const Partition& p, std::span<const double> grid, bool normalize,
                    double theta) {
    const count_t n = p.n();
    if (normalize && n < 2)
        throw std::domain_error("normalized count path requires n >= 2");
    const auto nu = count_at_thresholds(p, n);
    StatPath path;
    path.grid.assign(grid.begin(), grid.end());
    path.n = n;
    path.kind = normalize ? StatPath::Kind::normalized : StatPath::Kind::raw;
    path.values.reserve(grid.size());
    const double logn = std::log(double(n));
    const double scale = normalize ? std::sqrt(theta * logn) : 1.0;
    for (double t : grid) {
        const double raw = double(nu[power_threshold(n, t) - 1]);
        path.values.push_back(normalize ? (raw - theta * t * logn) / scale : raw);
    }
    return path;
}

PrimeSieve::PrimeSieve(count_t limit) : spf_(limit + 1, 0) {
    for (count_t x = 2; x <= limit; ++x) {
        if (spf_[x] == 0)
            for (count_t y = x; y <= limit; y += x)
                if (spf_[y] == 0) spf_[y] = std::uint32_t(x);
    }
}

void PrimeSieve::factorize(count_t x, std::vector<std::pair<count_t, count_t>>& out) const {
    while (x > 1) {
        const count_t prime = spf_[x];
        count_t exp = 0;
        while (x % prime == 0) {
            x /= prime;
            ++exp;
        }
        out.emplace_back(prime, exp);
    }
}

double log_lcm_of_parts(std::span<const count_t> parts, const PrimeSieve& sieve) {
    // Max exponent per prime over the distinct part sizes; few parts, so a
    // flat (prime, exponent) list beats a map.
    std::vector<std::pair<count_t, count_t>> max_exp;
    std::vector<std::pair<count_t, count_t>> factors;
    for (count_t part : parts) {
        if (part < 2) continue;
        factors.clear();
        sieve.factorize(part, factors);
        for (const auto& [prime, exp] : factors) {
            bool found = false;
            for (auto& [p, e] : max_exp) {
                if (p == prime) {
                    e = std::max(e, exp);
                    found = true;
                    break;
                }
            }
            if (!found) max_exp.emplace_back(prime, exp);
        }
    }
    double total = 0.0;
    for (const auto& [prime, exp] : max_exp)
        total += double(exp) * std::log(double(prime));
    return total;
}

std::vector<double> loglcm_at_thresholds(const Partition& p, count_t n, LcmMode mode) {
    std::vector<double> values(n, 0.0);
    if (mode == LcmMode::product) {
        p.for_each_entry([&](count_t size, count_t mult) {
            if (size <= n) values[size - 1] += double(mult) * std::log(double(size));
        });
        for (count_t m = 1; m < n; ++m) values[m] += values[m - 1];
        return values;
    }
    PrimeSieve sieve(std::max<count_t>(n, 2));
    std::vector<count_t> max_exp(n + 1, 0);  // indexed by prime
    std::vector<std::pair<count_t, count_t>> factors;
    double logsum = 0.0;
    const auto entries = p.entries();
    size_t next = 0;
    for (count_t m = 1; m <= n; ++m) {
        while (next < entries.size() && entries[next].first == m) {
            if (m >= 2) {
                factors.clear();
                sieve.factorize(m, factors);
                for (const auto& [prime, exp] : factors) {
                    if (exp > max_exp[prime]) {
                        logsum += double(exp - max_exp[prime]) * std::log(double(prime));
                        max_exp[prime] = exp;
                    }
                }
            }
            ++next;
        }
        values[m - 1] = logsum;
    }
    return values;
}

StatPath loglcm_path(const Partition& p, std::span<const double> grid, LcmMode mode,
                     bool normalize, double theta) {
    const count_t n = p.n();
    if (normalize && n < 2)
        throw std::domain_error("normalized path requires n >= 2");
    const auto values_at = loglcm_at_thresholds(p, n, mode);
    StatPath path;
    path.grid.assign(grid.begin(), grid.end());
    path.n = n;
    path.kind = normalize ? StatPath::Kind::normalized : StatPath::Kind::raw;
    path.values.reserve(grid.size());
    const double logn = std::log(double(n));
    const double scale = normalize ? std::sqrt(theta * logn * logn * logn / 3.0) : 1.0;
    for (double t : grid) {
        const double raw = values_at[power_threshold(n, t) - 1];
        path.values.push_back(
            normalize ? (raw - theta * t * t * logn * logn / 2.0) / scale : raw);
    }
    return path;
}

double prefix_sensitivity(SensitivityStat stat, const FellerBits& bits, count_t d) {
    const count_t n = bits.n();
    if (d > n) throw std::invalid_argument("prefix length exceeds string length");
    if (d == 0) return 0.0;
    const Partition a = feller_map(bits).partition;
    const Partition b = feller_map(force_prefix_ones(bits, d)).partition;
    switch (stat) {
        case SensitivityStat::ordered_scaled_l1:
            return double(ordered_l1_distance(ordered_parts(a), ordered_parts(b))) /
                   double(n);
        case SensitivityStat::count_path_sup: {
            const auto nu_a = count_at_thresholds(a, n);
            const auto nu_b = count_at_thresholds(b, n);
            count_t sup = 0;
            for (count_t m = 0; m < n; ++m) {
                const count_t diff = nu_a[m] > nu_b[m] ? nu_a[m] - nu_b[m] : nu_b[m] - nu_a[m];
                sup = std::max(sup, diff);
            }
            return double(sup);
        }
        case SensitivityStat::loglcm_path_sup:
        case SensitivityStat::logproduct_path_sup: {
            const LcmMode mode = stat == SensitivityStat::loglcm_path_sup
                                     ? LcmMode::lcm
                                     : LcmMode::product;
            const auto va = loglcm_at_thresholds(a, n, mode);
            const auto vb = loglcm_at_thresholds(b, n, mode);
            double sup = 0.0;
            for (count_t m = 0; m < n; ++m) sup = std::max(sup, std::abs(va[m] - vb[m]));
            return sup;
        }
    }
    throw std::invalid_argument("unknown sensitivity statistic");
}

}  // namespace ewens
