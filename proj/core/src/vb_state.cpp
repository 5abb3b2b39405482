#include "cssbl/vb_state.hpp"

#include <string>

#include "cssbl/errors.hpp"

namespace cssbl {

std::pair<Vector, Matrix> block_slice(const VbState& state, int k, int r) {
    if (k < 0 || k >= state.num_samples()) {
        throw IndexOutOfRange("block_slice: sample " + std::to_string(k) + " out of range");
    }
    const BlockStructure& structure = state.corr.structure();
    const int off = structure.offset(r); // range-checks r
    const int d = structure.block(r).size;
    return {state.mu[static_cast<std::size_t>(k)].segment(off, d),
            state.sigma[static_cast<std::size_t>(k)].block(off, off, d, d)};
}

Matrix assemble_prior_precision(const VbState& state, int k) {
    if (k < 0 || k >= static_cast<int>(state.resp.rows())) {
        throw IndexOutOfRange("assemble_prior_precision: sample " + std::to_string(k) +
                              " out of range");
    }
    const BlockStructure& structure = state.corr.structure();
    const int n = structure.dimension();
    Matrix precision = Matrix::Zero(n, n);
    for (int r = 0; r < structure.num_blocks(); ++r) {
        double weight = 0.0;
        for (int g = 0; g < state.num_groups(); ++g) {
            weight += state.gamma_mean(g, r) * state.resp(k, g);
        }
        const int off = structure.offset(r);
        const int d = structure.block(r).size;
        precision.block(off, off, d, d) = weight * state.corr.precision_block(r);
    }
    return precision;
}

} // namespace cssbl
