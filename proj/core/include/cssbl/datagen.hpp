#ifndef CSSBL_DATAGEN_HPP
#define CSSBL_DATAGEN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "cssbl/block_structure.hpp"
#include "cssbl/correlation_blocks.hpp"
#include "cssbl/fault_model.hpp"
#include "cssbl/rng.hpp"

namespace cssbl::datagen {

// Full generative description of a synthetic experiment. Block indices in
// `groups` are 0-based; `kcc_ids` carries the user-facing (1-based) KCC
// numbering of each internal position, since the internal layout always
// places correlated blocks first.
struct Scenario {
    int measurements = 1; // M
    BlockStructure structure = BlockStructure::all_independent(1);
    std::vector<double> correlations;     // k_i per correlated block
    std::vector<std::vector<int>> groups; // per group: faulty block indices
    double fault_variance = 1.0;
    double nonfault_variance = 0.01;
    double noise_variance = 1e-6; // 0 means noiseless
    int samples_per_group = 60;
    bool shuffle = true;
    std::uint64_t seed = 0;
    std::vector<int> kcc_ids; // empty means identity numbering 1..N
    // Dictionary override; columns must follow the user KCC numbering and
    // are reordered into the internal layout via kcc_ids.
    std::optional<std::filesystem::path> phi_file;

    void validate() const;
    int dimension() const { return structure.dimension(); }
    int num_groups() const { return static_cast<int>(groups.size()); }
    bool is_faulty(int group, int block) const;
    // G x N true variance surface: fault_variance on faulty blocks,
    // nonfault_variance elsewhere.
    Matrix group_variances() const;
    // kcc_ids with the empty default resolved.
    std::vector<int> display_ids() const;
};

// Two correlated size-3 blocks among 40 KCCs, 8 measurements, two disjoint
// groups of one correlated block plus three independent KCCs each,
// 60 samples per group. `k` sets both correlation coefficients.
Scenario numerical_preset(double k, std::uint64_t seed);

// Assembly study: 33 KCCs with correlated lists {KCC8..KCC13} and
// {KCC31..KCC33}, 12 measurements, group 1 = first list, group 2 = both
// lists plus one independent KCC, 50 samples per group.
Scenario assembly_preset(double k, std::uint64_t seed);

// Columns are independent standard-Gaussian M-vectors normalized to unit
// length (uniform on the sphere).
FaultQualityModel sample_dictionary(int measurements, int kccs, std::uint64_t seed);

// One draw with covariance gamma_inv * B_block^{-1}, as L * u with
// L = chol(gamma_inv * B^{-1}) and u iid standard Gaussian.
Vector draw_kcc_block(double gamma_inv, const CorrelationBlocks& corr, int block, Rng& rng);

// Dictionary plus K = G * samples_per_group samples with ground truth
// (true x, labels, variance surface, pre-shuffle positions) attached.
std::pair<FaultQualityModel, Dataset> generate(const Scenario& scenario);

} // namespace cssbl::datagen

#endif
