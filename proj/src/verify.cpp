#include "ewens/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ewens/batch.hpp"
#include "ewens/io.hpp"
#include "ewens/lcs.hpp"
#include "ewens/measures.hpp"
#include "ewens/oracle.hpp"
#include "ewens/reference.hpp"
#include "ewens/samplers.hpp"
#include "ewens/statistics.hpp"

namespace ewens {

bool SuiteReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

namespace {

constexpr double kThetas[] = {0.5, 1.0, 2.0};

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

void add(SuiteReport& report, std::string name, bool pass, std::string detail) {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
}

}  // namespace

double max_coupling_tv(count_t n_max, Exec exec) {
    double worst = 0.0;
    for (double theta : kThetas) {
        for (count_t n = 1; n <= n_max; ++n) {
            const auto pushed = exact_feller_pushforward(theta, n, exec);
            ExactPmfTable direct;
            direct.n = n;
            direct.theta = theta;
            for (const auto& [p, prob] : pushed.entries)
                direct.entries.emplace_back(p, ewens_pmf(theta, p));
            worst = std::max(worst, total_variation(pushed, direct));
        }
    }
    return worst;
}

std::optional<SensitivityViolation> scan_sensitivity_bounds(count_t n_max, Exec exec) {
    for (count_t n = 1; n <= n_max; ++n) {
        const std::uint64_t strings = std::uint64_t(1) << (n - 1);
        const double logn = std::log(double(n));
        std::vector<std::optional<SensitivityViolation>> found(strings);
        for_each_index(exec, strings, [&](std::uint64_t mask) {
            const FellerBits bits = FellerBits::from_mask(n, (mask << 1) | 1u);
            const Partition base = feller_map(bits).partition;
            const auto base_ordered = ordered_parts(base);
            const auto base_nu = count_at_thresholds(base, n);
            const auto base_lcm = loglcm_at_thresholds(base, n, LcmMode::lcm);
            const auto base_prod = loglcm_at_thresholds(base, n, LcmMode::product);
            for (count_t d = 1; d <= n && !found[mask]; ++d) {
                const Partition forced =
                    feller_map(force_prefix_ones(bits, d)).partition;
                const count_t l1 = ordered_l1_distance(base_ordered, ordered_parts(forced));
                if (double(l1) > 2.0 * double(d)) {
                    found[mask] = SensitivityViolation{n, mask, d, "ordered_l1",
                                                       double(l1), 2.0 * double(d)};
                    break;
                }
                const auto nu = count_at_thresholds(forced, n);
                for (count_t m = 0; m < n; ++m) {
                    const double diff = std::abs(double(base_nu[m]) - double(nu[m]));
                    if (diff > double(d)) {
                        found[mask] = SensitivityViolation{n, mask, d, "count_sup", diff,
                                                           double(d)};
                        break;
                    }
                }
                if (found[mask]) break;
                const auto lcm = loglcm_at_thresholds(forced, n, LcmMode::lcm);
                const auto prod = loglcm_at_thresholds(forced, n, LcmMode::product);
                const double cap = double(d) * logn + 1e-9;
                for (count_t m = 0; m < n; ++m) {
                    if (std::abs(base_lcm[m] - lcm[m]) > cap) {
                        found[mask] = SensitivityViolation{
                            n, mask, d, "loglcm_sup", std::abs(base_lcm[m] - lcm[m]),
                            double(d) * logn};
                        break;
                    }
                    if (std::abs(base_prod[m] - prod[m]) > cap) {
                        found[mask] = SensitivityViolation{
                            n, mask, d, "logproduct_sup", std::abs(base_prod[m] - prod[m]),
                            double(d) * logn};
                        break;
                    }
                }
            }
        });
        for (const auto& v : found)
            if (v) return v;
    }
    return std::nullopt;
}

double max_discrepancy_ratio(count_t n_max, Exec exec) {
    double worst = 0.0;
    for (double theta : kThetas) {
        for (count_t n = 2; n <= n_max; ++n) {
            std::vector<std::pair<count_t, count_t>> pairs;
            for (count_t d = 1; d < n; ++d)
                for (count_t i = 1; i <= d; ++i) pairs.emplace_back(d, i);
            std::vector<double> ratios(pairs.size(), 0.0);
            for_each_index(exec, pairs.size(), [&](std::uint64_t idx) {
                const auto [d, i] = pairs[idx];
                const auto [exact, bound] = alpha_discrepancy_exact(theta, n, d, i);
                ratios[idx] = exact / bound;
            });
            for (double r : ratios) worst = std::max(worst, r);
        }
    }
    return worst;
}

namespace {

SuiteReport suite_coupling(bool fast, Exec exec) {
    SuiteReport report{"coupling", {}};
    const count_t n_max = fast ? 10 : 14;

    const double tv = max_coupling_tv(n_max, exec);
    add(report, "pushforward total variation", tv < 1e-10,
        fmt("max TV = %.3g over theta {0.5,1,2}, n <= %g", tv, double(n_max)));

    bool exact_ok = true;
    for (count_t n = 1; n <= 8 && exact_ok; ++n) {
        const auto pushed = exact_feller_pushforward_rational(3, 2, n);
        const auto direct = ewens_pmf_rational(3, 2, n);
        exact_ok = pushed == direct;
    }
    add(report, "pushforward exact-rational identity", exact_ok,
        "theta = 3/2, n <= 8, exact equality");

    static const count_t kPartitionCounts[] = {1,  2,  3,  5,  7,   11,  15,  22,  30,  42,
                                               56, 77, 101, 135, 176, 231, 297, 385, 490, 627,
                                               792, 1002, 1255, 1575, 1958, 2436, 3010, 3718,
                                               4565, 5604};
    bool counts_ok = true;
    for (count_t n = 1; n <= 30; ++n) {
        if (partition_count(n) != kPartitionCounts[n - 1]) counts_ok = false;
        if (n <= 20 && enumerate_partitions(n).size() != kPartitionCounts[n - 1])
            counts_ok = false;
    }
    add(report, "partition counts match the classical sequence", counts_ok, "n <= 30");

    double worst_istar = 0.0;
    for (double theta : kThetas) {
        for (count_t n = 1; n <= n_max; ++n) {
            const auto [exhaustive, formula] = exact_istar_pmf(theta, n);
            for (count_t k = 0; k < n; ++k)
                worst_istar = std::max(worst_istar, std::abs(exhaustive[k] - formula[k]));
        }
    }
    add(report, "final-gap pmf: sweep vs closed formula", worst_istar < 1e-12,
        fmt("max abs diff = %.3g", worst_istar));
    return report;
}

std::vector<std::pair<std::string, WeightSpec>> weight_variants(count_t n) {
    std::vector<std::pair<std::string, WeightSpec>> out;
    out.emplace_back("constant(2)", ConstantWeight{2.0});
    out.emplace_back("macdonald(0.6,0.3)", MacdonaldWeight{0.6, 0.3});
    MultiplicativeWeight mult;
    for (count_t i = 1; i <= n; ++i)
        mult.zeta.push_back(1.0 + 0.5 / double(i * i));
    out.emplace_back("multiplicative(1+1/(2i^2))", std::move(mult));
    out.emplace_back("product_form(perturbed poisson)",
                     lcs_to_weights(make_perturbed_poisson_lcs(1.0, n, 0.25)));
    out.emplace_back("indicator(a1>0)", IndicatorWeight{{1}, {}, IndicatorWeight::Parity::none});
    out.emplace_back("indicator(even parts)",
                     IndicatorWeight{{}, {}, IndicatorWeight::Parity::even});
    return out;
}

SuiteReport suite_normalizers(bool fast, Exec) {
    SuiteReport report{"normalizers", {}};
    const count_t n_plain = fast ? 20 : 40;
    const count_t n_weighted = fast ? 12 : 25;

    double worst = 0.0;
    for (double theta : {0.3, 0.5, 1.0, 2.0, 5.0}) {
        for (count_t n = 1; n <= n_plain; ++n) {
            double total = 0.0;
            for_each_partition(n, [&](const Partition& p) { total += ewens_pmf(theta, p); });
            worst = std::max(worst, std::abs(total - 1.0));
        }
    }
    add(report, "plain pmf sums to 1", worst < 1e-12,
        fmt("max |sum-1| = %.3g, n <= %g", worst, double(n_plain)));

    double worst_w = 0.0;
    for (const auto& [name, weight] : weight_variants(n_weighted)) {
        const bool parity =
            std::holds_alternative<IndicatorWeight>(weight) &&
            std::get<IndicatorWeight>(weight).parity != IndicatorWeight::Parity::none;
        for (count_t n = parity ? 2 : 1; n <= n_weighted; ++n) {
            const MeasureSpec m{1.0, weight};
            const double Z = normalizer_enumerate(m, n);
            double total = 0.0;
            for_each_partition(n, [&](const Partition& p) { total += weighted_pmf(m, p, Z); });
            worst_w = std::max(worst_w, std::abs(total - 1.0));
        }
    }
    add(report, "weighted pmf sums to 1 (all variants)", worst_w < 1e-12,
        fmt("max |sum-1| = %.3g, n <= %g", worst_w, double(n_weighted)));

    double worst_rel = 0.0;
    for (double theta : kThetas) {
        for (const WeightSpec weight :
             {WeightSpec{ConstantWeight{1.0}}, WeightSpec{MacdonaldWeight{0.6, 0.3}}}) {
            const auto table = normalizer_recursive(theta, weight, n_weighted);
            for (count_t n = 1; n <= n_weighted; ++n) {
                const double direct = normalizer_enumerate(MeasureSpec{theta, weight}, n);
                worst_rel = std::max(worst_rel,
                                     std::abs(table.at(n) - direct) / std::abs(direct));
            }
        }
    }
    add(report, "normalizer recursion matches enumeration", worst_rel < 1e-10,
        fmt("max rel err = %.3g", worst_rel));
    return report;
}

SuiteReport suite_samplers(bool fast, std::uint64_t seed, Exec exec) {
    SuiteReport report{"samplers", {}};
    const count_t n = 8;
    const double theta = 1.5;
    const count_t n_samples = fast ? 100000 : 1000000;

    const auto table = exact_pmf_table(MeasureSpec{theta, ConstantWeight{1.0}}, n);
    std::vector<double> probs;
    for (const auto& [p, prob] : table.entries) probs.push_back(prob);
    std::map<std::vector<std::pair<count_t, count_t>>, std::uint32_t> index;
    for (std::uint32_t i = 0; i < table.entries.size(); ++i)
        index.emplace(table.entries[i].first.entries(), i);
    const auto lookup = [&](const Partition& p) { return index.at(p.entries()); };

    const auto run_chi2 = [&](const std::function<std::uint32_t(RngStream&)>& draw,
                              std::uint64_t seed_offset) {
        const auto indices =
            sample_index_batch(draw, n_samples, seed + seed_offset, 0, exec);
        std::vector<count_t> counts(probs.size(), 0);
        for (auto idx : indices) ++counts[idx];
        return chi_square_gof(counts, probs);
    };

    const auto feller_draw = [&](RngStream& rng) {
        return lookup(sample_ewens(theta, n, rng, EwensMethod::feller));
    };
    const auto crp_draw = [&](RngStream& rng) {
        return lookup(sample_ewens(theta, n, rng, EwensMethod::crp));
    };
    const SequentialSampler seq(theta, ConstantWeight{1.0}, n);
    const auto seq_draw = [&](RngStream& rng) { return lookup(seq.sample(rng)); };
    const ConditionedLcsSampler lcs(make_truncated_poisson_lcs(theta, n), n);
    const auto lcs_draw = [&](RngStream& rng) { return lookup(lcs.sample(rng)); };

    const std::pair<const char*, std::function<std::uint32_t(RngStream&)>> methods[] = {
        {"coupling-string sampler", feller_draw},
        {"restaurant-process sampler", crp_draw},
        {"sequential sampler (zeta=1)", seq_draw},
        {"conditioned sampler (truncated poisson)", lcs_draw},
    };
    std::uint64_t offset = 1;
    for (const auto& [name, draw] : methods) {
        const auto gof = run_chi2(draw, offset++);
        add(report, std::string("chi-square fit: ") + name, gof.pass,
            fmt("p = %.4g (stat %.4g)", gof.p_value, gof.statistic));
    }

    // Determinism: parallel batch equals serial batch bitwise.
    BatchRequest request{true, true, true, true};
    const auto serial = ewens_feller_batch(theta, 500, 2000, seed, 0, Exec::serial, request);
    const auto parallel =
        ewens_feller_batch(theta, 500, 2000, seed, 0, Exec::parallel, request);
    const bool same = serial.num_parts == parallel.num_parts &&
                      serial.largest_scaled == parallel.largest_scaled &&
                      serial.log_lcm == parallel.log_lcm &&
                      serial.log_product == parallel.log_product;
    add(report, "serial and parallel batches agree bitwise", same, "n=500, N=2000");

    const MeasureSpec plain{theta, ConstantWeight{3.0}};
    const auto est = importance_estimate(
        plain, 40, [](const Partition& p) { return double(p.num_parts()); }, 5000, seed, 0,
        exec);
    std::vector<double> direct(5000);
    for_each_index(exec, 5000, [&](std::uint64_t j) {
        RngStream rng(seed, j);
        direct[j] = double(
            feller_map(sample_feller_bits(theta, 40, rng)).partition.num_parts());
    });
    const double mean = pairwise_sum(direct) / 5000.0;
    add(report, "constant-weight importance equals the plain mean bitwise",
        est.value == mean && est.ess == 5000.0,
        fmt("estimate %.17g, ess %.1f", est.value, est.ess));
    return report;
}

SuiteReport suite_sensitivity(bool fast, Exec exec) {
    SuiteReport report{"sensitivity", {}};
    const count_t n_max = fast ? 10 : 14;
    const auto violation = scan_sensitivity_bounds(n_max, exec);
    std::string detail = fmt("exhaustive over all strings, n <= %g", double(n_max));
    if (violation)
        detail = "violated: " + violation->stat + " " + fmt("value %.6g > bound %.6g",
                                                            violation->value, violation->bound);
    add(report, "prefix-forcing bounds (ordered/count/log-lcm)", !violation, detail);
    return report;
}

SuiteReport suite_bounds(bool fast, Exec exec) {
    SuiteReport report{"bounds", {}};
    const count_t n_max = fast ? 10 : 14;

    const double ratio = max_discrepancy_ratio(n_max, exec);
    add(report, "prefix discrepancy probability under telescoping bound", ratio <= 1.0,
        fmt("max exact/bound = %.6g", ratio));

    for (const bool perturbed : {false, true}) {
        const double theta = 1.0;
        const count_t n = 30;
        const LcsSpec spec = perturbed ? make_perturbed_poisson_lcs(theta, n, 0.25)
                                       : make_truncated_poisson_lcs(theta, n);
        const auto weights = lcs_to_weights(spec);
        const auto refined = lcs_refined_envelope(spec, weights);
        const auto envelope = envelope_weights(theta, refined.e, refined.c);
        bool ok = true;
        std::string why;
        for (count_t i = 1; i <= n && ok; ++i) {
            if (weights.zeta_at(i, 0) != 1.0) { ok = false; why = "zeta_i(0) != 1"; }
            const count_t lmax = count_t(spec.y_pmf[i - 1].size()) - 1;
            const double ei = refined.e[i - 1];
            if (ok && lmax >= 1 &&
                std::abs(weights.zeta_at(i, 1) - 1.0) > ei / theta * (1 + 1e-12) + 1e-15) {
                ok = false;
                why = "|zeta_i(1)-1| above envelope";
            }
            double prev = envelope.zeta_plus(i, 0);
            for (count_t l = 1; l <= lmax && ok; ++l) {
                const double z = weights.zeta_at(i, l);
                const double plus = envelope.zeta_plus(i, l);
                const double minus = envelope.zeta_minus(i, l);
                if (l >= 2) {
                    const double cap = std::exp(double(l - 1) * std::log(double(i)) +
                                                std::lgamma(double(l) + 1.0) -
                                                double(l) * std::log(theta)) *
                                       ei * refined.c[l];
                    if (z > cap * (1 + 1e-12) + 1e-15) { ok = false; why = "zeta above cap"; }
                }
                if (z > plus * (1 + 1e-12) + 1e-15 || z < minus * (1 - 1e-12) - 1e-15) {
                    ok = false;
                    why = "envelope sandwich violated";
                }
                if (plus < prev * (1 - 1e-12) - 1e-15) { ok = false; why = "upper envelope not monotone"; }
                prev = plus;
            }
        }
        add(report,
            std::string(perturbed ? "perturbed" : "truncated") +
                "-poisson structure satisfies the weight bounds",
            ok, ok ? "n = 30 grid" : why);
    }

    bool eta_ok = true;
    std::string eta_detail = "weight expectation equals normalizer ratio, n = 10";
    try {
        for (const auto& [name, weight] : weight_variants(10)) {
            const auto [by_strings, by_ratio] = exact_eta_ratio(MeasureSpec{1.0, weight}, 10);
            (void)by_strings;
            (void)by_ratio;
        }
    } catch (const std::exception& e) {
        eta_ok = false;
        eta_detail = e.what();
    }
    add(report, "dual-route weight expectation", eta_ok, eta_detail);
    (void)fast;
    return report;
}

SuiteReport suite_limits(bool fast, std::uint64_t seed, Exec exec) {
    SuiteReport report{"limits", {}};
    const count_t big_n = fast ? 2000 : 10000;
    const count_t n_samples = fast ? 2000 : 10000;
    const double theta = 1.0;

    // Moments of the total part count against the exact Bernoulli sums.
    {
        double exact_mean = 0.0, exact_var = 0.0;
        for (count_t j = 1; j <= big_n; ++j) {
            const double p = theta / (theta + double(j - 1));
            exact_mean += p;
            exact_var += p * (1.0 - p);
        }
        BatchRequest request{true, false, false, false};
        const auto stats =
            ewens_feller_batch(theta, big_n, n_samples, seed + 11, 0, exec, request);
        const double mean = batch_mean(stats.num_parts);
        const double var = batch_variance(stats.num_parts);
        const double se = std::sqrt(exact_var / double(n_samples));
        const bool mean_ok = std::abs(mean - exact_mean) < 3.0 * se;
        const bool var_ok = std::abs(var - exact_var) / exact_var < (fast ? 0.10 : 0.05);
        add(report, "part-count mean within 3 standard errors", mean_ok,
            fmt("mean %.4f vs exact %.4f", mean, exact_mean));
        add(report, "part-count variance near exact", var_ok,
            fmt("var %.4f vs exact %.4f", var, exact_var));
    }

    const std::vector<count_t> grid =
        fast ? std::vector<count_t>{100, 1000} : std::vector<count_t>{100, 1000, 10000};

    // Scaled largest part against the stick-breaking reference.
    {
        const auto reference =
            pd_largest_batch(theta, 1e-12, n_samples, seed + 13, 0, exec);
        std::vector<double> distances;
        for (count_t n : grid) {
            BatchRequest request{false, true, false, false};
            const auto stats =
                ewens_feller_batch(theta, n, n_samples, seed + 17, 0, exec, request);
            distances.push_back(ks_test(stats.largest_scaled, reference).statistic);
        }
        const double last = distances.back();
        const bool ok = last <= distances.front() && last < (fast ? 0.10 : 0.06);
        std::string detail = "KS:";
        for (double d : distances) detail += fmt(" %.4f", d);
        add(report, "largest-part law approaches the stick-breaking reference", ok, detail);
    }

    // Log-product growth ratio toward theta (log n)^2 / 2.
    {
        std::vector<double> ratios;
        for (count_t n : grid) {
            BatchRequest request{false, false, false, true};
            const auto stats =
                ewens_feller_batch(theta, n, n_samples, seed + 19, 0, exec, request);
            const double logn = std::log(double(n));
            ratios.push_back(batch_mean(stats.log_product) / (theta * logn * logn / 2.0));
        }
        const bool ok = ratios.back() >= ratios.front() &&
                        std::abs(ratios.back() - 1.0) < (fast ? 0.30 : 0.25);
        std::string detail = "ratios:";
        for (double r : ratios) detail += fmt(" %.4f", r);
        add(report, "log-product growth ratio approaches 1", ok, detail);
    }

    // Universality: studentized part counts, weighted vs plain.
    {
        std::vector<double> distances;
        for (count_t n : grid) {
            BatchRequest request{true, false, false, false};
            const auto plain =
                ewens_feller_batch(theta, n, n_samples, seed + 23, 0, exec, request);
            const SequentialSampler sampler(theta, MacdonaldWeight{0.6, 0.3}, n);
            const auto weighted =
                sequential_batch(sampler, n_samples, seed + 29, 0, exec, request);
            distances.push_back(ks_test(studentize(plain.num_parts),
                                        studentize(weighted.num_parts))
                                    .statistic);
        }
        const bool ok = distances.back() <= distances.front() + 0.01;
        std::string detail = "KS:";
        for (double d : distances) detail += fmt(" %.4f", d);
        add(report, "studentized part-count distance shrinks under the weighted measure",
            ok, detail);
    }
    return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"coupling",    "normalizers", "samplers",
                                                   "sensitivity", "bounds",      "limits"};
    return names;
}

SuiteReport run_suite(const std::string& name, bool fast, std::uint64_t seed, Exec exec) {
    if (name == "coupling") return suite_coupling(fast, exec);
    if (name == "normalizers") return suite_normalizers(fast, exec);
    if (name == "samplers") return suite_samplers(fast, seed, exec);
    if (name == "sensitivity") return suite_sensitivity(fast, exec);
    if (name == "bounds") return suite_bounds(fast, exec);
    if (name == "limits") return suite_limits(fast, seed, exec);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace ewens
