#include "ewens/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ewens {

double MacdonaldWeight::zeta_at(count_t i) const {
    return (1.0 - std::pow(q, double(i))) / (1.0 - std::pow(t, double(i)));
}

count_t IndicatorWeight::window() const {
    count_t m = 0;
    for (count_t i : positive_any) m = std::max(m, i);
    for (count_t i : zero_all) m = std::max(m, i);
    return m;
}

namespace {

// Shared evaluation over any container exposing count(size) plus entry
// iteration. Entries must be the nonzero (size, multiplicity) pairs.
template <typename Counts>
double eval_impl(const WeightSpec& w, const Counts& counts) {
    return std::visit(
        [&](const auto& spec) -> double {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, ConstantWeight>) {
                return spec.value;
            } else if constexpr (std::is_same_v<T, MultiplicativeWeight> ||
                                 std::is_same_v<T, MacdonaldWeight>) {
                double result = 1.0;
                counts.for_each([&](count_t size, count_t mult) {
                    result *= std::pow(spec.zeta_at(size), double(mult));
                });
                return result;
            } else if constexpr (std::is_same_v<T, ProductFormWeight>) {
                double result = 1.0;
                counts.for_each([&](count_t size, count_t mult) {
                    result *= spec.zeta_at(size, mult);
                });
                return result;
            } else {
                static_assert(std::is_same_v<T, IndicatorWeight>);
                if (!spec.positive_any.empty()) {
                    count_t total = 0;
                    for (count_t i : spec.positive_any) total += counts.count_at(i);
                    if (total == 0) return 0.0;
                }
                for (count_t i : spec.zero_all)
                    if (counts.count_at(i) != 0) return 0.0;
                if (spec.parity != IndicatorWeight::Parity::none) {
                    count_t parts = 0;
                    counts.for_each([&](count_t, count_t mult) { parts += mult; });
                    bool even = (parts % 2 == 0);
                    if (even != (spec.parity == IndicatorWeight::Parity::even)) return 0.0;
                }
                return 1.0;
            }
        },
        w);
}

struct PartitionView {
    const Partition& p;
    count_t count_at(count_t i) const { return p.count(i); }
    template <typename F>
    void for_each(F&& f) const { p.for_each_entry(std::forward<F>(f)); }
};

struct TruncatedView {
    const TruncatedCounts& t;
    count_t count_at(count_t i) const { return t.count(i); }
    template <typename F>
    void for_each(F&& f) const {
        for (count_t i = 1; i <= t.m; ++i)
            if (t.counts[i - 1] > 0) f(i, t.counts[i - 1]);
    }
};

}  // namespace

double weight_eval(const WeightSpec& w, const Partition& p) {
    return eval_impl(w, PartitionView{p});
}

double weight_eval(const WeightSpec& w, const TruncatedCounts& t) {
    return eval_impl(w, TruncatedView{t});
}

bool is_multiplicative_family(const WeightSpec& w) {
    return std::holds_alternative<ConstantWeight>(w) ||
           std::holds_alternative<MultiplicativeWeight>(w) ||
           std::holds_alternative<MacdonaldWeight>(w);
}

double multiplicative_zeta(const WeightSpec& w, count_t i) {
    if (std::holds_alternative<ConstantWeight>(w)) return 1.0;
    if (const auto* m = std::get_if<MultiplicativeWeight>(&w)) return m->zeta_at(i);
    if (const auto* m = std::get_if<MacdonaldWeight>(&w)) return m->zeta_at(i);
    throw std::invalid_argument("weight is not in the multiplicative family");
}

nlohmann::json weight_to_json(const WeightSpec& w) {
    using json = nlohmann::json;
    return std::visit(
        [](const auto& spec) -> json {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, ConstantWeight>) {
                return json{{"type", "constant"}, {"value", spec.value}};
            } else if constexpr (std::is_same_v<T, MultiplicativeWeight>) {
                return json{{"type", "multiplicative"},
                            {"zeta", spec.zeta},
                            {"default", spec.fallback}};
            } else if constexpr (std::is_same_v<T, MacdonaldWeight>) {
                return json{{"type", "macdonald"}, {"q", spec.q}, {"t", spec.t}};
            } else if constexpr (std::is_same_v<T, ProductFormWeight>) {
                return json{{"type", "product_form"}, {"zeta", spec.zeta}};
            } else {
                static_assert(std::is_same_v<T, IndicatorWeight>);
                const char* parity = spec.parity == IndicatorWeight::Parity::none ? "none"
                                    : spec.parity == IndicatorWeight::Parity::even ? "even"
                                                                                   : "odd";
                return json{{"type", "indicator"},
                            {"positive_any", spec.positive_any},
                            {"zero_all", spec.zero_all},
                            {"parity", parity}};
            }
        },
        w);
}

WeightSpec weight_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") {
        ConstantWeight w;
        w.value = j.at("value").get<double>();
        if (!(w.value > 0)) throw std::invalid_argument("constant weight must be positive");
        return w;
    }
    if (type == "multiplicative") {
        MultiplicativeWeight w;
        w.zeta = j.at("zeta").get<std::vector<double>>();
        w.fallback = j.value("default", 1.0);
        for (double z : w.zeta)
            if (z < 0) throw std::invalid_argument("multiplicative zeta must be nonnegative");
        return w;
    }
    if (type == "macdonald") {
        MacdonaldWeight w;
        w.q = j.at("q").get<double>();
        w.t = j.at("t").get<double>();
        if (!(w.q > 0 && w.q < 1 && w.t > 0 && w.t < 1))
            throw std::invalid_argument("macdonald parameters must lie in (0,1)");
        return w;
    }
    if (type == "product_form") {
        ProductFormWeight w;
        w.zeta = j.at("zeta").get<std::vector<std::vector<double>>>();
        for (const auto& row : w.zeta) {
            if (!row.empty() && row[0] != 1.0)
                throw std::invalid_argument("product-form zeta_i(0) must equal 1");
            for (double z : row)
                if (z < 0) throw std::invalid_argument("product-form zeta must be nonnegative");
        }
        return w;
    }
    if (type == "indicator") {
        IndicatorWeight w;
        if (j.contains("positive_any")) w.positive_any = j.at("positive_any").get<std::vector<count_t>>();
        if (j.contains("zero_all")) w.zero_all = j.at("zero_all").get<std::vector<count_t>>();
        const std::string parity = j.value("parity", "none");
        if (parity == "even") w.parity = IndicatorWeight::Parity::even;
        else if (parity == "odd") w.parity = IndicatorWeight::Parity::odd;
        else if (parity == "none") w.parity = IndicatorWeight::Parity::none;
        else throw std::invalid_argument("indicator parity must be none/even/odd");
        return w;
    }
    throw std::invalid_argument("unknown weight type: " + type);
}

std::string weight_digest(const WeightSpec& w) {
    const std::string doc = weight_to_json(w).dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : doc) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

}  // namespace ewens
