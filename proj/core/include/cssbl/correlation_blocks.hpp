#ifndef CSSBL_CORRELATION_BLOCKS_HPP
#define CSSBL_CORRELATION_BLOCKS_HPP

#include "cssbl/block_structure.hpp"
#include "cssbl/types.hpp"

namespace cssbl {

// Unit-diagonal d x d matrix with constant off-diagonal k.
Matrix equicorrelation(int d, double k);

// Open PD interval for the equicorrelation coefficient: (-1/(d-1), 1).
double equicorrelation_lower_bound(int d);

// Per-block correlation state. Every block is an equicorrelation matrix
// (independent blocks are the 1x1 identity), so a block is fully described
// by its coefficient; B_i^{-1}, B_i, and log det(B_i) come from the closed
// forms, which stay well conditioned as k -> 1.
class CorrelationBlocks {
public:
    explicit CorrelationBlocks(BlockStructure structure);

    static CorrelationBlocks identity(const BlockStructure& structure);

    const BlockStructure& structure() const { return structure_; }

    // Coefficient k_i of a correlated block; validates the PD interval.
    void set_coefficient(int block, double k);
    double coefficient(int block) const;

    // Correlation matrix B_i^{-1} (covariance side).
    Matrix inverse_block(int block) const;

    // Precision-side block B_i = (B_i^{-1})^{-1} by the equicorrelation
    // closed form: [I - k/(1+(d-1)k) * J] / (1-k).
    Matrix precision_block(int block) const;

    // ln det(B_i) = -[ln(1+(d-1)k) + (d-1) ln(1-k)].
    double log_det_precision(int block) const;

private:
    void check_block(int block) const;

    BlockStructure structure_;
    std::vector<double> coeff_; // one per block; 0 for independent blocks
};

} // namespace cssbl

#endif
