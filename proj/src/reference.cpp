#include "ewens/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace ewens {

PdSample sample_pd(double theta, RngStream& rng, double tol) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (!(tol > 0) || tol >= 1) throw std::invalid_argument("tol must lie in (0,1)");
    PdSample out;
    double remaining = 1.0;
    while (remaining >= tol) {
        const double frac = rng.beta_one(theta);
        out.components.push_back(remaining * frac);
        remaining *= 1.0 - frac;
    }
    out.tail_bound = remaining;
    std::sort(out.components.begin(), out.components.end(), std::greater<>());
    return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double brownian_marginal_cdf(double t, double x, TimeChange change) {
    if (t < 0 || t > 1) throw std::invalid_argument("t must lie in [0,1]");
    if (t == 0.0) return x < 0 ? 0.0 : 1.0;
    const double var = change == TimeChange::identity ? t : t * t * t;
    return normal_cdf(x / std::sqrt(var));
}

std::string TestReport::to_text() const {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "statistic=%.10g p_value=%.10g n_a=%llu n_b=%llu verdict=%s",
                  statistic, p_value, static_cast<unsigned long long>(n_a),
                  static_cast<unsigned long long>(n_b), pass ? "pass" : "fail");
    return buf;
}

double ks_asymptotic_pvalue(double x) {
    if (x <= 0.02) return 1.0;  // series unusable at the origin; p is 1 anyway
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * double(k) * double(k) * x * x);
        sum += (k % 2 == 1) ? term : -term;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestReport ks_test(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("samples must be nonempty");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = double(sa.size()), nb = double(sb.size());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() || j < sb.size()) {
        const double v = (i < sa.size() && (j >= sb.size() || sa[i] <= sb[j])) ? sa[i] : sb[j];
        while (i < sa.size() && sa[i] <= v) ++i;
        while (j < sb.size() && sb[j] <= v) ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    TestReport report;
    report.statistic = d;
    report.n_a = sa.size();
    report.n_b = sb.size();
    report.p_value = ks_asymptotic_pvalue(std::sqrt(na * nb / (na + nb)) * d);
    report.pass = report.p_value > kSuiteSignificance;
    return report;
}

TestReport ks_test(std::span<const double> a, const std::function<double(double)>& cdf) {
    if (a.empty()) throw std::invalid_argument("sample must be nonempty");
    std::vector<double> sa(a.begin(), a.end());
    std::sort(sa.begin(), sa.end());
    const double n = double(sa.size());
    double d = 0.0;
    for (size_t i = 0; i < sa.size(); ++i) {
        const double f = cdf(sa[i]);
        d = std::max(d, std::max(f - double(i) / n, double(i + 1) / n - f));
    }
    TestReport report;
    report.statistic = d;
    report.n_a = sa.size();
    report.n_b = 0;
    report.p_value = ks_asymptotic_pvalue(std::sqrt(n) * d);
    report.pass = report.p_value > kSuiteSignificance;
    return report;
}

TestReport chi_square_gof(std::span<const count_t> counts,
                          std::span<const double> expected_probs) {
    if (counts.size() != expected_probs.size())
        throw std::invalid_argument("counts and probabilities differ in length");
    if (counts.empty()) throw std::invalid_argument("no bins");
    double total_prob = 0.0;
    count_t total = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        total += counts[i];
        total_prob += expected_probs[i];
    }
    if (total == 0) throw std::invalid_argument("no observations");
    if (std::abs(total_prob - 1.0) > 1e-9)
        throw std::invalid_argument("expected probabilities must sum to 1");

    std::vector<std::pair<double, double>> bins;  // (observed, expected)
    double pooled_obs = 0.0, pooled_exp = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
        const double expected = double(total) * expected_probs[i];
        if (expected < 5.0) {
            pooled_obs += double(counts[i]);
            pooled_exp += expected;
        } else {
            bins.emplace_back(double(counts[i]), expected);
        }
    }
    if (pooled_exp > 0.0) {
        if (pooled_exp >= 5.0) {
            bins.emplace_back(pooled_obs, pooled_exp);
        } else if (!bins.empty()) {
            // merge into the smallest kept bin (lowest index on ties)
            size_t target = 0;
            for (size_t i = 1; i < bins.size(); ++i)
                if (bins[i].second < bins[target].second) target = i;
            bins[target].first += pooled_obs;
            bins[target].second += pooled_exp;
        } else {
            throw std::domain_error("all mass pooled into one bin");
        }
    }
    if (bins.size() < 2) throw std::domain_error("fewer than two bins after pooling");

    double stat = 0.0;
    for (const auto& [obs, expected] : bins) {
        const double diff = obs - expected;
        stat += diff * diff / expected;
    }
    const double dof = double(bins.size() - 1);
    TestReport report;
    report.statistic = stat;
    report.n_a = total;
    report.n_b = 0;
    report.p_value = stat <= 0.0 ? 1.0 : boost::math::gamma_q(dof / 2.0, stat / 2.0);
    report.pass = report.p_value > kSuiteSignificance;
    return report;
}

}  // namespace ewens
