#include "ewens/partition.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace ewens {

namespace {

count_t weighted_sum(const std::vector<count_t>& counts) {
    count_t total = 0;
    for (count_t i = 0; i < counts.size(); ++i) total += (i + 1) * counts[i];
    return total;
}

}  // namespace

Partition Partition::from_counts(count_t n, std::vector<count_t> counts) {
    if (counts.size() > n)
        throw std::invalid_argument("partition counts extend beyond n");
    if (weighted_sum(counts) != n)
        throw std::invalid_argument("partition counts do not sum to n");
    Partition p;
    p.n_ = n;
    if (n <= kDenseLimit) {
        counts.resize(n, 0);
        p.dense_mode_ = true;
        p.counts_ = std::move(counts);
    } else {
        p.dense_mode_ = false;
        for (count_t i = 0; i < counts.size(); ++i)
            if (counts[i] > 0) p.sparse_.emplace_back(i + 1, counts[i]);
    }
    return p;
}

Partition Partition::from_entries(count_t n, std::vector<std::pair<count_t, count_t>> entries) {
    std::sort(entries.begin(), entries.end());
    count_t total = 0;
    count_t prev = 0;
    for (const auto& [size, mult] : entries) {
        if (size == 0 || size == prev)
            throw std::invalid_argument("partition entries must have distinct positive sizes");
        if (mult == 0)
            throw std::invalid_argument("partition entries must have positive multiplicity");
        total += size * mult;
        prev = size;
    }
    if (total != n)
        throw std::invalid_argument("partition entries do not sum to n");
    Partition p;
    p.n_ = n;
    if (n <= kDenseLimit) {
        p.dense_mode_ = true;
        p.counts_.assign(n, 0);
        for (const auto& [size, mult] : entries) p.counts_[size - 1] = mult;
    } else {
        p.dense_mode_ = false;
        p.sparse_ = std::move(entries);
    }
    return p;
}

Partition Partition::from_parts(std::span<const count_t> parts) {
    std::map<count_t, count_t> mult;
    count_t n = 0;
    for (count_t part : parts) {
        if (part == 0) throw std::invalid_argument("parts must be positive");
        ++mult[part];
        n += part;
    }
    std::vector<std::pair<count_t, count_t>> entries(mult.begin(), mult.end());
    return from_entries(n, std::move(entries));
}

count_t Partition::count(count_t size) const {
    if (size == 0 || size > n_) return 0;
    if (dense_mode_) return counts_[size - 1];
    auto it = std::lower_bound(sparse_.begin(), sparse_.end(),
                               std::pair<count_t, count_t>{size, 0});
    return (it != sparse_.end() && it->first == size) ? it->second : 0;
}

count_t Partition::num_parts() const {
    count_t total = 0;
    for_each_entry([&](count_t, count_t mult) { total += mult; });
    return total;
}

count_t Partition::max_part() const {
    count_t best = 0;
    for_each_entry([&](count_t size, count_t) { best = size; });
    return best;
}

std::vector<std::pair<count_t, count_t>> Partition::entries() const {
    if (!dense_mode_) return sparse_;
    std::vector<std::pair<count_t, count_t>> out;
    for (count_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] > 0) out.emplace_back(i + 1, counts_[i]);
    return out;
}

bool Partition::operator==(const Partition& other) const {
    if (n_ != other.n_) return false;
    return entries() == other.entries();
}

std::string Partition::to_text() const {
    std::string out = "n=" + std::to_string(n_) + ";counts=";
    bool first = true;
    for_each_entry([&](count_t size, count_t mult) {
        if (!first) out += ',';
        out += std::to_string(size);
        out += ':';
        out += std::to_string(mult);
        first = false;
    });
    return out;
}

namespace {

count_t parse_u64(std::string_view text, const char* what) {
    count_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument(std::string("bad ") + what + " in partition text");
    return value;
}

}  // namespace

Partition Partition::parse(std::string_view text) {
    constexpr std::string_view kN = "n=";
    constexpr std::string_view kCounts = ";counts=";
    if (text.substr(0, kN.size()) != kN)
        throw std::invalid_argument("partition text must start with 'n='");
    auto sep = text.find(kCounts);
    if (sep == std::string_view::npos)
        throw std::invalid_argument("partition text missing ';counts='");
    count_t n = parse_u64(text.substr(kN.size(), sep - kN.size()), "n");
    std::string_view body = text.substr(sep + kCounts.size());
    std::vector<std::pair<count_t, count_t>> entries;
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view item = body.substr(0, comma);
        auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("partition entry missing ':'");
        entries.emplace_back(parse_u64(item.substr(0, colon), "size"),
                             parse_u64(item.substr(colon + 1), "multiplicity"));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return from_entries(n, std::move(entries));
}

FellerBits::FellerBits(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw std::invalid_argument("bit string must be nonempty");
    for (auto b : bits_)
        if (b > 1) throw std::invalid_argument("bit string entries must be 0 or 1");
}

FellerBits FellerBits::from_mask(count_t n, std::uint64_t mask) {
    if (n == 0 || n > 64) throw std::invalid_argument("mask form requires 1 <= n <= 64");
    std::vector<std::uint8_t> bits(n);
    for (count_t j = 0; j < n; ++j) bits[j] = (mask >> j) & 1u;
    return FellerBits(std::move(bits));
}

FellerBits FellerBits::parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument("bit string must be over {0,1}");
        bits.push_back(std::uint8_t(c - '0'));
    }
    return FellerBits(std::move(bits));
}

std::string FellerBits::to_text() const {
    std::string out(bits_.size(), '0');
    for (size_t j = 0; j < bits_.size(); ++j)
        if (bits_[j]) out[j] = '1';
    return out;
}

FellerImage feller_map(const FellerBits& bits) {
    const count_t n = bits.n();
    count_t first = 0;  // 1-based position of first 1, 0 if none
    for (count_t j = 1; j <= n; ++j) {
        if (bits.bit(j)) { first = j; break; }
    }
    if (first == 0) return FellerImage{Partition{}, false};
    const count_t k = n + 1 - first;
    std::vector<count_t> counts(k, 0);
    count_t last = first;
    for (count_t j = first + 1; j <= n; ++j) {
        if (bits.bit(j)) {
            ++counts[j - last - 1];
            last = j;
        }
    }
    ++counts[n - last];  // trailing gap closed by the appended 1
    return FellerImage{Partition::from_counts(k, std::move(counts)), first == 1};
}

TruncatedCounts feller_truncate(const FellerBits& bits, count_t m) {
    const count_t n = bits.n();
    if (m < 1 || m > n) throw std::invalid_argument("truncation level must satisfy 1 <= m <= n");
    TruncatedCounts out;
    out.m = m;
    out.counts.assign(m, 0);
    count_t last = 0;
    for (count_t j = 1; j <= n; ++j) {
        if (bits.bit(j)) {
            if (last != 0 && j - last <= m) ++out.counts[j - last - 1];
            last = j;
        }
    }
    if (last != 0 && n + 1 - last <= m) ++out.counts[n - last];
    out.k = 0;
    for (count_t i = 1; i <= m; ++i) out.k += i * out.counts[i - 1];
    return out;
}

TruncatedCounts feller_tilde(const FellerBits& bits) {
    const count_t n = bits.n();
    TruncatedCounts out;
    out.m = n;
    out.counts.assign(n, 0);
    count_t last = 0;
    count_t first = 0;
    for (count_t j = 1; j <= n; ++j) {
        if (bits.bit(j)) {
            if (last != 0) ++out.counts[j - last - 1];
            else first = j;
            last = j;
        }
    }
    out.k = (last != 0) ? last - first : 0;
    return out;
}

count_t final_gap_size(const FellerBits& bits) {
    const count_t n = bits.n();
    for (count_t j = n; j >= 1; --j)
        if (bits.bit(j)) return n + 1 - j;
    throw std::domain_error("final gap undefined for all-zero string");
}

FellerBits force_prefix_ones(const FellerBits& bits, count_t d) {
    if (d > bits.n()) throw std::invalid_argument("prefix length exceeds string length");
    std::vector<std::uint8_t> out = bits.raw();
    for (count_t j = 0; j < d; ++j) out[j] = 1;
    return FellerBits(std::move(out));
}

}  // namespace ewens
