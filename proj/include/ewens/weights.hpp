#pragma once
// Weight families for perturbed partition measures. A weight assigns a
// nonnegative number to a partition (its density relative to the unperturbed
// measure, up to a constant); the empty partition always has weight 1 except
// for the constant family, whose scale cancels on normalization anyway.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ewens/partition.hpp"

#include "json.hpp"

namespace ewens {

struct ConstantWeight {
    double value = 1.0;
};

// eta(a) = prod_i zeta_i^{a_i}. zeta holds indices 1..zeta.size(); sizes
// beyond the table use `fallback`.
struct MultiplicativeWeight {
    std::vector<double> zeta;
    double fallback = 1.0;

    double zeta_at(count_t i) const {
        return (i >= 1 && i <= zeta.size()) ? zeta[i - 1] : fallback;
    }
};

// Multiplicative with zeta_i = (1 - q^i) / (1 - t^i), 0 < q < 1, 0 < t < 1.
struct MacdonaldWeight {
    double q = 0.5;
    double t = 0.5;

    double zeta_at(count_t i) const;
};

// eta(a) = prod_i zeta_i(a_i), tabulated over i <= I_max and l <= L_max(i);
// zeta_i(0) = 1 is enforced and values outside the table default to 1.
struct ProductFormWeight {
    std::vector<std::vector<double>> zeta;  // zeta[i-1][l]

    double zeta_at(count_t i, count_t l) const {
        if (l == 0) return 1.0;
        if (i >= 1 && i <= zeta.size() && l < zeta[i - 1].size()) return zeta[i - 1][l];
        return 1.0;
    }
};

// 0/1 weight from structured predicates on the multiplicity vector:
//  - positive_any (if nonempty): sum of a_i over the listed sizes must be > 0
//  - zero_all: a_i must be 0 for every listed size
//  - parity: total number of parts must have the given parity
// The parity rule is global (not a small-parts window); it exists for the
// restricted-permutation families and is kept out of universality runs.
struct IndicatorWeight {
    enum class Parity { none, even, odd };

    std::vector<count_t> positive_any;
    std::vector<count_t> zero_all;
    Parity parity = Parity::none;

    count_t window() const;  // largest size referenced by the local rules
};

using WeightSpec = std::variant<ConstantWeight, MultiplicativeWeight, MacdonaldWeight,
                                ProductFormWeight, IndicatorWeight>;

double weight_eval(const WeightSpec& w, const Partition& p);
double weight_eval(const WeightSpec& w, const TruncatedCounts& t);

// Constant / Multiplicative / Macdonald: families with per-size factors
// zeta_i, for which the sequential sampler and the recursion apply.
bool is_multiplicative_family(const WeightSpec& w);
double multiplicative_zeta(const WeightSpec& w, count_t i);  // requires the above

// JSON document form, e.g. {"type":"macdonald","q":0.6,"t":0.3}.
nlohmann::json weight_to_json(const WeightSpec& w);
WeightSpec weight_from_json(const nlohmann::json& j);

// FNV-1a hash of the canonical JSON document, as 16 hex digits. Stamped on
// output files for provenance.
std::string weight_digest(const WeightSpec& w);

}  // namespace ewens
