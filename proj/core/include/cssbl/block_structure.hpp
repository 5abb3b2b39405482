#ifndef CSSBL_BLOCK_STRUCTURE_HPP
#define CSSBL_BLOCK_STRUCTURE_HPP

#include <vector>

namespace cssbl {

struct Block {
    int size = 1;
    bool correlated = false;

    bool operator==(const Block&) const = default;
};

// Partition of the N KCC indices into R contiguous blocks: the correlated
// lists first (size >= 2 each), then the independent KCCs (size 1 each).
class BlockStructure {
public:
    explicit BlockStructure(std::vector<Block> blocks);

    // Correlated lists of the given sizes followed by enough independent
    // singletons to reach `dimension` total indices.
    static BlockStructure with_independent_tail(const std::vector<int>& correlated_sizes,
                                                int dimension);

    // Every KCC independent (one singleton block per index).
    static BlockStructure all_independent(int dimension);

    int num_blocks() const { return static_cast<int>(blocks_.size()); } // R
    int num_correlated() const { return num_correlated_; }              // r
    int dimension() const { return dimension_; }                        // N

    const Block& block(int i) const;
    int offset(int i) const; // start index of block i
    int block_of(int index) const; // block containing KCC index

    const std::vector<Block>& blocks() const { return blocks_; }

    bool operator==(const BlockStructure&) const = default;

private:
    std::vector<Block> blocks_;
    std::vector<int> offsets_;
    int num_correlated_ = 0;
    int dimension_ = 0;
};

} // namespace cssbl

#endif
