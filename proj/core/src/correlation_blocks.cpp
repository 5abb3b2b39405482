#include "cssbl/correlation_blocks.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cssbl/errors.hpp"

namespace cssbl {

Matrix equicorrelation(int d, double k) {
    Matrix m = Matrix::Constant(d, d, k);
    m.diagonal().setOnes();
    return m;
}

double equicorrelation_lower_bound(int d) {
    if (d < 2) {
        return -std::numeric_limits<double>::infinity();
    }
    return -1.0 / (d - 1);
}

CorrelationBlocks::CorrelationBlocks(BlockStructure structure)
    : structure_(std::move(structure)),
      coeff_(static_cast<std::size_t>(structure_.num_blocks()), 0.0) {}

CorrelationBlocks CorrelationBlocks::identity(const BlockStructure& structure) {
    return CorrelationBlocks(structure);
}

void CorrelationBlocks::check_block(int block) const {
    if (block < 0 || block >= structure_.num_blocks()) {
        throw IndexOutOfRange("CorrelationBlocks: block index " + std::to_string(block) +
                              " out of range");
    }
}

void CorrelationBlocks::set_coefficient(int block, double k) {
    check_block(block);
    const Block& b = structure_.block(block);
    if (!b.correlated) {
        throw DomainError("CorrelationBlocks: block " + std::to_string(block) +
                          " is independent, coefficient is fixed at 0");
    }
    if (!(k > equicorrelation_lower_bound(b.size) && k < 1.0)) {
        throw DomainError("CorrelationBlocks: coefficient " + std::to_string(k) +
                          " outside PD interval (" +
                          std::to_string(equicorrelation_lower_bound(b.size)) + ", 1)");
    }
    coeff_[static_cast<std::size_t>(block)] = k;
}

double CorrelationBlocks::coefficient(int block) const {
    check_block(block);
    return coeff_[static_cast<std::size_t>(block)];
}

Matrix CorrelationBlocks::inverse_block(int block) const {
    check_block(block);
    const Block& b = structure_.block(block);
    return equicorrelation(b.size, coeff_[static_cast<std::size_t>(block)]);
}

Matrix CorrelationBlocks::precision_block(int block) const {
    check_block(block);
    const Block& b = structure_.block(block);
    const int d = b.size;
    const double k = coeff_[static_cast<std::size_t>(block)];
    if (d == 1 || k == 0.0) {
        return Matrix::Identity(d, d);
    }
    const double denom = 1.0 + (d - 1) * k;
    if (!(denom > 0.0) || !(1.0 - k > 0.0)) {
        throw NotPositiveDefinite("CorrelationBlocks: coefficient " + std::to_string(k) +
                                  " makes block " + std::to_string(block) + " singular");
    }
    Matrix m = Matrix::Constant(d, d, -k / denom);
    m.diagonal().array() += 1.0;
    return m / (1.0 - k);
}

double CorrelationBlocks::log_det_precision(int block) const {
    check_block(block);
    const Block& b = structure_.block(block);
    const int d = b.size;
    const double k = coeff_[static_cast<std::size_t>(block)];
    if (d == 1 || k == 0.0) {
        return 0.0;
    }
    const double denom = 1.0 + (d - 1) * k;
    if (!(denom > 0.0) || !(1.0 - k > 0.0)) {
        throw NotPositiveDefinite("CorrelationBlocks: coefficient " + std::to_string(k) +
                                  " makes block " + std::to_string(block) + " singular");
    }
    return -(std::log(denom) + (d - 1) * std::log(1.0 - k));
}

} // namespace cssbl
