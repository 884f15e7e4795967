#include "ewens/exec.hpp"

namespace ewens {

namespace {

double pairwise_sum_rec(const double* data, std::size_t count) {
    if (count <= 128) {
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) sum += data[i];
        return sum;
    }
    const std::size_t half = count / 2;
    return pairwise_sum_rec(data, half) + pairwise_sum_rec(data + half, count - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_rec(values.data(), values.size());
}

}  // namespace ewens
