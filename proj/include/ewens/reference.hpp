#pragma once
// Reference limit distributions and the statistical test kit used to compare
// sampled statistics against them: stick-breaking draws whose order
// statistics follow the Poisson-Dirichlet law, Gaussian marginals of the
// limiting processes, and Kolmogorov-Smirnov / chi-square tests with the
// suite-wide significance level 1e-3.

#include <functional>
#include <span>
#include <vector>

#include "ewens/partition.hpp"
#include "ewens/rng.hpp"

namespace ewens {

inline constexpr double kSuiteSignificance = 1e-3;

// Stick-breaking draw with Beta(1, theta) fractions, truncated once the
// remaining stick is below tol; components sorted descending. The sorted
// components follow the Poisson-Dirichlet law up to the tail bound.
struct PdSample {
    std::vector<double> components;  // nonincreasing
    double tail_bound = 0.0;         // unassigned remaining mass
};

PdSample sample_pd(double theta, RngStream& rng, double tol);

enum class TimeChange { identity, cubic };

// Marginal CDF of the limiting process at time t: Phi(x / sqrt(t)) or
// Phi(x / sqrt(t^3)). t = 0 degenerates to a step at 0.
double brownian_marginal_cdf(double t, double x, TimeChange change);

double normal_cdf(double x);

struct TestReport {
    double statistic = 0.0;
    double p_value = 1.0;
    count_t n_a = 0;
    count_t n_b = 0;       // 0 for one-sample tests
    bool pass = false;     // p_value > kSuiteSignificance

    std::string to_text() const;
};

// Survival function of the Kolmogorov distribution,
// Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2), truncated at 100 terms.
double ks_asymptotic_pvalue(double x);

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
TestReport ks_test(std::span<const double> a, std::span<const double> b);
// One-sample test against a CDF.
TestReport ks_test(std::span<const double> a, const std::function<double(double)>& cdf);

// Chi-square goodness of fit. Bins with expected count < 5 are pooled into
// one bin; if the pooled bin is still below 5 it merges into the smallest
// kept bin. Throws if pooling leaves fewer than two bins.
TestReport chi_square_gof(std::span<const count_t> counts,
                          std::span<const double> expected_probs);

}  // namespace ewens
