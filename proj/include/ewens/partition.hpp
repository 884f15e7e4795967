#pragma once
// Integer partitions in multiplicity form, binary coupling strings, and the
// gap-counting map between them. A partition of n is (a_1, ..., a_n) with
// sum i*a_i = n, a_i the number of parts of size i. A coupling string of
// length n maps to a partition by reading parts off as the gaps between
// consecutive 1s of (x_1, ..., x_n, 1).

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ewens {

using count_t = std::uint64_t;

// Partition of n stored as part multiplicities. Counts are dense up to
// kDenseLimit and sparse (size, multiplicity) pairs beyond; the two
// representations compare equal through the canonical nonzero-entry form.
// Immutable after construction.
class Partition {
public:
    static constexpr count_t kDenseLimit = 1u << 20;

    Partition() = default;  // empty partition of 0

    // counts[i-1] is the multiplicity of part size i. Validates sum i*a_i = n.
    static Partition from_counts(count_t n, std::vector<count_t> counts);
    // entries are (size, multiplicity), any order, multiplicities > 0.
    static Partition from_entries(count_t n, std::vector<std::pair<count_t, count_t>> entries);
    static Partition from_parts(std::span<const count_t> parts);

    count_t n() const { return n_; }
    count_t count(count_t size) const;
    count_t num_parts() const;
    count_t max_part() const;
    bool dense() const { return dense_mode_; }

    // Nonzero (size, multiplicity) pairs, ascending by size.
    std::vector<std::pair<count_t, count_t>> entries() const;

    template <typename F>
    void for_each_entry(F&& f) const {
        if (dense_mode_) {
            for (count_t i = 0; i < counts_.size(); ++i)
                if (counts_[i] > 0) f(i + 1, counts_[i]);
        } else {
            for (const auto& [size, mult] : sparse_) f(size, mult);
        }
    }

    bool operator==(const Partition& other) const;
    bool operator!=(const Partition& other) const { return !(*this == other); }

    // Canonical text form "n=9;counts=1:2,3:1,4:1" (zero counts omitted).
    std::string to_text() const;
    static Partition parse(std::string_view text);

private:
    count_t n_ = 0;
    bool dense_mode_ = true;
    std::vector<count_t> counts_;                         // dense, index i-1
    std::vector<std::pair<count_t, count_t>> sparse_;     // sorted by size
};

// Binary string x_1...x_n. Bit positions are 1-based in the API to match the
// usual coupling indexing. Serialized as "101...".
class FellerBits {
public:
    explicit FellerBits(std::vector<std::uint8_t> bits);
    // Bit j of the string is bit (j-1) of mask; requires n <= 64. Used for
    // exhaustive sweeps.
    static FellerBits from_mask(count_t n, std::uint64_t mask);
    static FellerBits parse(std::string_view text);

    count_t n() const { return count_t(bits_.size()); }
    int bit(count_t j) const { return bits_[j - 1]; }  // 1-based
    bool starts_with_one() const { return !bits_.empty() && bits_[0] == 1; }
    const std::vector<std::uint8_t>& raw() const { return bits_; }

    std::string to_text() const;
    bool operator==(const FellerBits& o) const { return bits_ == o.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

// Result of the coupling map. When x_1 = 1 the gaps tile all of n and
// `partition` is a partition of n (complete = true). Otherwise the leading
// zeros are lost and `partition` is a partition of k < n; callers decide
// whether that is an error. The coupling measure never produces x_1 = 0.
struct FellerImage {
    Partition partition;
    bool complete = false;
};

// Multiplicities of parts of size <= m read off a coupling string; a
// partition of k = sum_{i<=m} i*a_i <= n.
struct TruncatedCounts {
    count_t m = 0;
    std::vector<count_t> counts;  // counts[i-1], i = 1..m
    count_t k = 0;

    count_t count(count_t size) const {
        return (size >= 1 && size <= m) ? counts[size - 1] : 0;
    }
};

// Parts are gaps between consecutive 1s of (x_1, ..., x_n, 1).
FellerImage feller_map(const FellerBits& bits);

// feller_map restricted to part sizes <= m. Requires 1 <= m <= n.
TruncatedCounts feller_truncate(const FellerBits& bits, count_t m);

// Gaps of (x_1, ..., x_n, 0): the trailing incomplete gap is dropped, so the
// result differs from feller_map at exactly the final gap size, by one part.
TruncatedCounts feller_tilde(const FellerBits& bits);

// n + 1 - (position of the last 1). Requires at least one 1.
count_t final_gap_size(const FellerBits& bits);

// Returns the string with positions 1..d forced to 1. Requires d <= n.
FellerBits force_prefix_ones(const FellerBits& bits, count_t d);

}  // namespace ewens
