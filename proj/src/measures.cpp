#include "ewens/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "ewens/oracle.hpp"

namespace ewens {

double log_rising_factorial(double theta, count_t n) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    return std::lgamma(theta + double(n)) - std::lgamma(theta);
}

double rising_factorial(double theta, count_t n) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (n <= 150) {  // direct product is exact-ish and cannot overflow here
        double result = 1.0;
        for (count_t j = 0; j < n; ++j) result *= theta + double(j);
        return result;
    }
    return std::exp(log_rising_factorial(theta, n));
}

double log_ewens_base(double theta, const Partition& p) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    const double log_theta = std::log(theta);
    double total = 0.0;
    p.for_each_entry([&](count_t size, count_t mult) {
        total += double(mult) * (log_theta - std::log(double(size)));
        total -= std::lgamma(double(mult) + 1.0);
    });
    return total;
}

double log_ewens_pmf(double theta, const Partition& p) {
    return std::lgamma(double(p.n()) + 1.0) - log_rising_factorial(theta, p.n()) +
           log_ewens_base(theta, p);
}

double ewens_pmf(double theta, const Partition& p) {
    return std::exp(log_ewens_pmf(theta, p));
}

double weighted_pmf(const MeasureSpec& m, const Partition& p, double Z) {
    if (!(Z > 0)) throw std::domain_error("normalizer must be positive; measure undefined");
    const double eta = weight_eval(m.weight, p);
    if (eta == 0.0) return 0.0;
    return eta * std::exp(log_ewens_base(m.theta, p)) / Z;
}

double normalizer_enumerate(const MeasureSpec& m, count_t n, count_t cap) {
    if (n > cap) throw std::length_error("n exceeds the enumeration cap");
    double total = 0.0;
    for_each_partition(n, [&](const Partition& p) {
        const double eta = weight_eval(m.weight, p);
        if (eta != 0.0) total += eta * std::exp(log_ewens_base(m.theta, p));
    });
    return total;
}

NormalizerTable normalizer_recursive(double theta, const WeightSpec& weight, count_t N) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (!is_multiplicative_family(weight))
        throw std::invalid_argument("recursion requires a multiplicative-family weight");
    std::vector<double> tz(N);  // theta * zeta_k, k = 1..N
    for (count_t k = 1; k <= N; ++k) tz[k - 1] = theta * multiplicative_zeta(weight, k);
    NormalizerTable table;
    table.theta = theta;
    table.values.assign(N + 1, 0.0);
    table.values[0] = 1.0;
    for (count_t n = 1; n <= N; ++n) {
        double acc = 0.0;
        for (count_t k = 1; k <= n; ++k) acc += tz[k - 1] * table.values[n - k];
        table.values[n] = acc / double(n);
    }
    return table;
}

}  // namespace ewens
