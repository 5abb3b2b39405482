#include "cssbl/block_structure.hpp"

#include <string>

#include "cssbl/errors.hpp"

namespace cssbl {

BlockStructure::BlockStructure(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        throw DomainError("BlockStructure: at least one block required");
    }
    bool seen_independent = false;
    offsets_.reserve(blocks_.size());
    for (const Block& b : blocks_) {
        if (b.correlated) {
            if (seen_independent) {
                throw DomainError("BlockStructure: correlated blocks must precede independent ones");
            }
            if (b.size < 2) {
                throw DomainError("BlockStructure: correlated block size must be >= 2, got " +
                                  std::to_string(b.size));
            }
            ++num_correlated_;
        } else {
            seen_independent = true;
            if (b.size != 1) {
                throw DomainError("BlockStructure: independent block size must be 1, got " +
                                  std::to_string(b.size));
            }
        }
        offsets_.push_back(dimension_);
        dimension_ += b.size;
    }
}

BlockStructure BlockStructure::with_independent_tail(const std::vector<int>& correlated_sizes,
                                                     int dimension) {
    std::vector<Block> blocks;
    int used = 0;
    for (int d : correlated_sizes) {
        blocks.push_back({d, true});
        used += d;
    }
    if (used > dimension) {
        throw DomainError("BlockStructure: correlated sizes exceed dimension");
    }
    for (int i = used; i < dimension; ++i) {
        blocks.push_back({1, false});
    }
    return BlockStructure(std::move(blocks));
}

BlockStructure BlockStructure::all_independent(int dimension) {
    return with_independent_tail({}, dimension);
}

const Block& BlockStructure::block(int i) const {
    if (i < 0 || i >= num_blocks()) {
        throw IndexOutOfRange("BlockStructure: block index " + std::to_string(i) +
                              " out of range [0, " + std::to_string(num_blocks()) + ")");
    }
    return blocks_[static_cast<std::size_t>(i)];
}

int BlockStructure::offset(int i) const {
    block(i); // range check
    return offsets_[static_cast<std::size_t>(i)];
}

int BlockStructure::block_of(int index) const {
    if (index < 0 || index >= dimension_) {
        throw IndexOutOfRange("BlockStructure: KCC index " + std::to_string(index) +
                              " out of range [0, " + std::to_string(dimension_) + ")");
    }
    int r = 0;
    while (r + 1 < num_blocks() && offsets_[static_cast<std::size_t>(r + 1)] <= index) {
        ++r;
    }
    return r;
}

} // namespace cssbl
