#pragma once
// Conditioned-structure specifications: independent nonnegative variables
// Y_1, Y_2, ... whose law conditioned on sum i*Y_i = n defines a partition
// measure. Such a structure is equivalent to a product-form weight via
//   zeta_i(l) = P[Y_i = l] (i/theta)^l l! / P[Y_i = 0],
// and the per-index envelopes (e_i, c_l) bound how far the structure strays
// from the unperturbed case:
//   |i P[Y_i=1] - theta| <= e_i,   i P[Y_i=l] <= e_i c_l  (l >= 2).

#include <vector>

#include "ewens/weights.hpp"

namespace ewens {

struct LcsSpec {
    double theta = 1.0;
    // y_pmf[i-1][l] = P[Y_i = l]; support truncated at floor(n/i) for the
    // target n (lossless for the conditioned law).
    std::vector<std::vector<double>> y_pmf;
    std::vector<double> e;  // e[i-1], envelope for index i
    std::vector<double> c;  // c[l]; c[0], c[1] are unused by the raw envelope

    count_t max_index() const { return count_t(y_pmf.size()); }

    // Checks pmf normalization and the envelope inequalities on the stored
    // prefix; throws on violation.
    void validate() const;
};

// Y_i ~ Poisson(theta/i) truncated at floor(n/i) and renormalized. The
// induced weights are identically 1 (the unperturbed case).
LcsSpec make_truncated_poisson_lcs(double theta, count_t n);

// Same construction with P[Y_i = 1] scaled by (1 + delta/i) before
// renormalization; a genuine perturbation with vanishing envelope.
LcsSpec make_perturbed_poisson_lcs(double theta, count_t n, double delta);

// zeta_i(l) = P[Y_i=l] (i/theta)^l l! / p_i with p_i = P[Y_i=0] > 0.
// Throws domain_error if any p_i = 0.
ProductFormWeight lcs_to_weights(const LcsSpec& spec);

// Refined envelope sequences:
//   e'_i = max(e_i / p_i, theta |zeta_i(1) - 1|, 1/i)
//   c'_0 = 0, c'_1 = 1,
//   c'_2 = max(c_2, max_i (theta^2 + theta e'_i) / (2 i e'_i)),
//   c'_l = max(c_l, theta c'_{l-1})  for 3 <= l <= 2 theta,
//   c'_l = max(c_l, c'_{l-1} / 2)    for l > 2 theta.
// With these, the upper envelope below is monotone increasing in l for
// every i, and the weight bounds hold with (e', c') in place of (e, c).
struct RefinedEnvelope {
    std::vector<double> e;  // e'[i-1]
    std::vector<double> c;  // c'[l]
};
RefinedEnvelope lcs_refined_envelope(const LcsSpec& spec, const ProductFormWeight& weights);

// Envelope weight pair:
//   zeta_plus(i,l)  = 1_{l<=1} + i^{l-1} l! e_i c_l / theta^l
//   zeta_minus(i,0) = 1, zeta_minus(i,1) = max(1 - e_i/theta, 0),
//   zeta_minus(i,l) = 0 for l >= 2.
// Requires c[0] = 0 and c[1] = 1 (enforced at construction).
struct EnvelopeWeights {
    double theta = 1.0;
    std::vector<double> e;
    std::vector<double> c;

    double zeta_plus(count_t i, count_t l) const;
    double zeta_minus(count_t i, count_t l) const;
};

EnvelopeWeights envelope_weights(double theta, std::vector<double> e, std::vector<double> c);

}  // namespace ewens
