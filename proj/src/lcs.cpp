#include "ewens/lcs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ewens {

void LcsSpec::validate() const {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (e.size() < y_pmf.size()) throw std::invalid_argument("envelope e shorter than pmf table");
    for (count_t i = 1; i <= max_index(); ++i) {
        const auto& pmf = y_pmf[i - 1];
        if (pmf.empty()) throw std::invalid_argument("empty pmf row");
        double total = 0.0;
        for (double p : pmf) {
            if (p < 0) throw std::invalid_argument("negative pmf entry");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw std::invalid_argument("pmf row " + std::to_string(i) + " does not sum to 1");
        const double ei = e[i - 1];
        if (pmf.size() > 1 && std::abs(double(i) * pmf[1] - theta) > ei * (1 + 1e-12) + 1e-15)
            throw std::invalid_argument("envelope violated at l=1, i=" + std::to_string(i));
        for (count_t l = 2; l < pmf.size(); ++l) {
            if (l >= c.size()) {
                if (pmf[l] > 0) throw std::invalid_argument("pmf support exceeds envelope c");
                continue;
            }
            if (double(i) * pmf[l] > ei * c[l] * (1 + 1e-12) + 1e-15)
                throw std::invalid_argument("envelope violated at l=" + std::to_string(l) +
                                            ", i=" + std::to_string(i));
        }
    }
}

namespace {

LcsSpec make_poisson_like(double theta, count_t n, double delta) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (n == 0) throw std::invalid_argument("n must be positive");
    LcsSpec spec;
    spec.theta = theta;
    spec.y_pmf.resize(n);
    spec.e.resize(n);
    const double ad = std::abs(delta);
    count_t max_l = n;
    spec.c.assign(max_l + 1, 0.0);
    // c_l = e^theta (1+|delta|) theta^{l-2} / l!; vanishing with l c_l summable.
    for (count_t l = 2; l <= max_l; ++l)
        spec.c[l] = std::exp(theta) * (1.0 + ad) *
                    std::exp(double(l - 2) * std::log(theta) - std::lgamma(double(l) + 1.0));
    for (count_t i = 1; i <= n; ++i) {
        const double lambda = theta / double(i);
        const count_t support = n / i;
        std::vector<double> pmf(support + 1);
        double mass = std::exp(-lambda);
        pmf[0] = mass;
        for (count_t l = 1; l <= support; ++l) {
            mass *= lambda / double(l);
            pmf[l] = mass;
        }
        if (support >= 1) pmf[1] *= 1.0 + delta / double(i);
        double total = 0.0;
        for (double p : pmf) total += p;
        for (double& p : pmf) p /= total;
        spec.y_pmf[i - 1] = std::move(pmf);
        spec.e[i - 1] = theta * (theta + ad + 1.0) / double(i);
    }
    spec.validate();
    return spec;
}

}  // namespace

LcsSpec make_truncated_poisson_lcs(double theta, count_t n) {
    return make_poisson_like(theta, n, 0.0);
}

LcsSpec make_perturbed_poisson_lcs(double theta, count_t n, double delta) {
    if (std::abs(delta) >= 1.0)
        throw std::invalid_argument("perturbation must satisfy |delta| < 1");
    return make_poisson_like(theta, n, delta);
}

ProductFormWeight lcs_to_weights(const LcsSpec& spec) {
    ProductFormWeight w;
    w.zeta.resize(spec.max_index());
    for (count_t i = 1; i <= spec.max_index(); ++i) {
        const auto& pmf = spec.y_pmf[i - 1];
        const double p0 = pmf[0];
        if (!(p0 > 0)) throw std::domain_error("P[Y_i = 0] must be positive");
        std::vector<double> row(pmf.size());
        row[0] = 1.0;
        const double ratio = double(i) / spec.theta;
        double scale = 1.0;  // (i/theta)^l l!
        for (count_t l = 1; l < pmf.size(); ++l) {
            scale *= ratio * double(l);
            row[l] = pmf[l] * scale / p0;
        }
        w.zeta[i - 1] = std::move(row);
    }
    return w;
}

RefinedEnvelope lcs_refined_envelope(const LcsSpec& spec, const ProductFormWeight& weights) {
    const count_t imax = spec.max_index();
    RefinedEnvelope out;
    out.e.resize(imax);
    for (count_t i = 1; i <= imax; ++i) {
        const double p0 = spec.y_pmf[i - 1][0];
        if (!(p0 > 0)) throw std::domain_error("P[Y_i = 0] must be positive");
        const double z1 = weights.zeta_at(i, 1);
        out.e[i - 1] = std::max({spec.e[i - 1] / p0,
                                 spec.theta * std::abs(z1 - 1.0),
                                 1.0 / double(i)});
    }
    const count_t lmax = spec.c.empty() ? 1 : count_t(spec.c.size()) - 1;
    out.c.assign(std::max<count_t>(lmax, 1) + 1, 0.0);
    out.c[0] = 0.0;
    if (out.c.size() > 1) out.c[1] = 1.0;
    if (out.c.size() > 2) {
        double sup = 0.0;
        for (count_t i = 1; i <= imax; ++i) {
            const double ei = out.e[i - 1];
            sup = std::max(sup, (spec.theta * spec.theta + spec.theta * ei) /
                                    (2.0 * double(i) * ei));
        }
        out.c[2] = std::max(spec.c.size() > 2 ? spec.c[2] : 0.0, sup);
    }
    for (count_t l = 3; l < out.c.size(); ++l) {
        const double base = l < spec.c.size() ? spec.c[l] : 0.0;
        const double grow = (double(l) <= 2.0 * spec.theta) ? spec.theta * out.c[l - 1]
                                                            : 0.5 * out.c[l - 1];
        out.c[l] = std::max(base, grow);
    }
    return out;
}

EnvelopeWeights envelope_weights(double theta, std::vector<double> e, std::vector<double> c) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (c.size() < 2) c.resize(2, 0.0);
    c[0] = 0.0;  // enforced convention
    c[1] = 1.0;
    return EnvelopeWeights{theta, std::move(e), std::move(c)};
}

double EnvelopeWeights::zeta_plus(count_t i, count_t l) const {
    if (i < 1 || i > e.size()) throw std::out_of_range("index outside stored envelope");
    if (l >= c.size()) throw std::out_of_range("occupancy outside stored envelope");
    const double indicator = (l <= 1) ? 1.0 : 0.0;
    if (c[l] == 0.0) return indicator;
    const double log_term = double(l - 1) * std::log(double(i)) +
                            std::lgamma(double(l) + 1.0) - double(l) * std::log(theta);
    return indicator + std::exp(log_term) * e[i - 1] * c[l];
}

double EnvelopeWeights::zeta_minus(count_t i, count_t l) const {
    if (i < 1 || i > e.size()) throw std::out_of_range("index outside stored envelope");
    if (l == 0) return 1.0;
    if (l == 1) return std::max(1.0 - e[i - 1] / theta, 0.0);
    return 0.0;
}

}  // namespace ewens
