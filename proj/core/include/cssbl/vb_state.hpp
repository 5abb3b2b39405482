#ifndef CSSBL_VB_STATE_HPP
#define CSSBL_VB_STATE_HPP

#include <utility>
#include <vector>

#include "cssbl/correlation_blocks.hpp"
#include "cssbl/types.hpp"

namespace cssbl {

// All variational posterior quantities. Mutated only by the vbem module;
// transferable between threads but never shared mutably.
struct VbState {
    explicit VbState(CorrelationBlocks corr_blocks) : corr(std::move(corr_blocks)) {}

    std::vector<Vector> mu;    // K posterior means, length N each
    std::vector<Matrix> sigma; // K posterior covariances, N x N, symmetric PD
    Matrix gamma_a;            // G x R Gamma shape parameters
    Matrix gamma_b;            // G x R Gamma rate parameters
    Matrix resp;               // K x G responsibilities, rows sum to 1
    double alpha_a = 1.0;      // noise precision Gamma shape
    double alpha_b = 1.0;      // noise precision Gamma rate
    CorrelationBlocks corr;
    int iteration = 0;

    int num_samples() const { return static_cast<int>(mu.size()); }           // K
    int num_groups() const { return static_cast<int>(resp.cols()); }          // G
    double alpha_mean() const { return alpha_a / alpha_b; }                   // E[alpha]
    double gamma_mean(int g, int r) const { return gamma_a(g, r) / gamma_b(g, r); }
};

// (mu_{k,r}, Sigma_{k,r}): the contiguous sub-vector and principal
// sub-matrix of block r.
std::pair<Vector, Matrix> block_slice(const VbState& state, int k, int r);

// The N x N block-diagonal prior precision of sample k: block r equals
// sum_g E[gamma_{g,r}] E[z_{k,g}] B_r.
Matrix assemble_prior_precision(const VbState& state, int k);

} // namespace cssbl

#endif
