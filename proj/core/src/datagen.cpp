#include "cssbl/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cssbl/errors.hpp"
#include "cssbl/numerics.hpp"

namespace cssbl::datagen {

namespace {

// Sub-stream ids hung off the scenario seed.
constexpr std::uint64_t kPhiStream = 1;
constexpr std::uint64_t kDrawStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kShuffleStream = 4;

CorrelationBlocks build_correlation(const Scenario& sc) {
    CorrelationBlocks corr(sc.structure);
    for (int i = 0; i < sc.structure.num_correlated(); ++i) {
        corr.set_coefficient(i, sc.correlations[static_cast<std::size_t>(i)]);
    }
    return corr;
}

std::vector<int> shuffled_identity(int n, Rng& rng) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
}

} // namespace

void Scenario::validate() const {
    if (measurements < 1) {
        throw DomainError("measurements must be >= 1, got " + std::to_string(measurements));
    }
    if (static_cast<int>(correlations.size()) != structure.num_correlated()) {
        throw DimensionMismatch("scenario has " + std::to_string(correlations.size()) +
                                " correlation coefficients for " +
                                std::to_string(structure.num_correlated()) +
                                " correlated blocks");
    }
    for (int i = 0; i < structure.num_correlated(); ++i) {
        const double k = correlations[static_cast<std::size_t>(i)];
        const double lo = equicorrelation_lower_bound(structure.block(i).size);
        if (!(k > lo) || !(k < 1.0)) {
            throw DomainError("correlation coefficient " + std::to_string(k) +
                              " outside the PD interval of block " + std::to_string(i));
        }
    }
    if (groups.empty()) {
        throw EmptyInput("scenario needs at least one group");
    }
    for (const auto& faulty : groups) {
        std::vector<int> sorted = faulty;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw DomainError("a group lists the same faulty block twice");
        }
        for (int b : sorted) {
            if (b < 0 || b >= structure.num_blocks()) {
                throw IndexOutOfRange("faulty block index " + std::to_string(b) +
                                      " outside [0, " + std::to_string(structure.num_blocks()) +
                                      ")");
            }
        }
    }
    if (!(fault_variance > nonfault_variance) || !(nonfault_variance > 0.0)) {
        throw DomainError("variances must satisfy fault_variance > nonfault_variance > 0");
    }
    if (!(noise_variance >= 0.0)) {
        throw DomainError("noise_variance must be >= 0");
    }
    if (samples_per_group < 1) {
        throw DomainError("samples_per_group must be >= 1");
    }
    if (!kcc_ids.empty()) {
        if (static_cast<int>(kcc_ids.size()) != dimension()) {
            throw DimensionMismatch("kcc_ids has " + std::to_string(kcc_ids.size()) +
                                    " entries for " + std::to_string(dimension()) + " KCCs");
        }
        std::vector<int> sorted = kcc_ids;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < dimension(); ++i) {
            if (sorted[static_cast<std::size_t>(i)] != i + 1) {
                throw DomainError("kcc_ids must be a permutation of 1.." +
                                  std::to_string(dimension()));
            }
        }
    }
}

bool Scenario::is_faulty(int group, int block) const {
    const auto& faulty = groups[static_cast<std::size_t>(group)];
    return std::find(faulty.begin(), faulty.end(), block) != faulty.end();
}

Matrix Scenario::group_variances() const {
    Matrix var(num_groups(), dimension());
    for (int g = 0; g < num_groups(); ++g) {
        for (int r = 0; r < structure.num_blocks(); ++r) {
            const double v = is_faulty(g, r) ? fault_variance : nonfault_variance;
            for (int j = 0; j < structure.block(r).size; ++j) {
                var(g, structure.offset(r) + j) = v;
            }
        }
    }
    return var;
}

std::vector<int> Scenario::display_ids() const {
    if (!kcc_ids.empty()) {
        return kcc_ids;
    }
    std::vector<int> ids(static_cast<std::size_t>(dimension()));
    std::iota(ids.begin(), ids.end(), 1);
    return ids;
}

Scenario numerical_preset(double k, std::uint64_t seed) {
    Scenario sc;
    sc.measurements = 8;
    sc.structure = BlockStructure::with_independent_tail({3, 3}, 40);
    sc.correlations = {k, k};
    // Correlated blocks are 0 and 1; independent KCCs start at block 2.
    sc.groups = {{0, 2, 3, 4}, {1, 5, 6, 7}};
    sc.samples_per_group = 60;
    sc.seed = seed;
    return sc;
}

Scenario assembly_preset(double k, std::uint64_t seed) {
    Scenario sc;
    sc.measurements = 12;
    sc.structure = BlockStructure::with_independent_tail({6, 3}, 33);
    sc.correlations = {k, k};
    // Group 2 adds the first independent KCC to both correlated lists.
    sc.groups = {{0}, {0, 1, 2}};
    sc.samples_per_group = 50;
    sc.seed = seed;

    // Internal order: {KCC8..13}, {KCC31..33}, then the remaining KCCs
    // ascending.
    sc.kcc_ids.reserve(33);
    for (int id = 8; id <= 13; ++id) {
        sc.kcc_ids.push_back(id);
    }
    for (int id = 31; id <= 33; ++id) {
        sc.kcc_ids.push_back(id);
    }
    for (int id = 1; id <= 7; ++id) {
        sc.kcc_ids.push_back(id);
    }
    for (int id = 14; id <= 30; ++id) {
        sc.kcc_ids.push_back(id);
    }
    return sc;
}

FaultQualityModel sample_dictionary(int measurements, int kccs, std::uint64_t seed) {
    if (measurements < 1 || kccs < 1) {
        throw DomainError("dictionary dimensions must be >= 1");
    }
    Matrix phi(measurements, kccs);
    Rng rng(seed);
    for (int j = 0; j < kccs; ++j) {
        double norm = 0.0;
        do {
            for (int i = 0; i < measurements; ++i) {
                phi(i, j) = rng.gaussian();
            }
            norm = phi.col(j).norm();
        } while (norm == 0.0);
        phi.col(j) /= norm;
    }
    return FaultQualityModel(std::move(phi));
}

Vector draw_kcc_block(double gamma_inv, const CorrelationBlocks& corr, int block, Rng& rng) {
    if (!(gamma_inv > 0.0)) {
        throw DomainError("gamma_inv must be positive, got " + std::to_string(gamma_inv));
    }
    const Matrix cov = gamma_inv * corr.inverse_block(block);
    const Matrix chol = numerics::cholesky_lower(cov);
    Vector u(cov.rows());
    for (int i = 0; i < u.size(); ++i) {
        u(i) = rng.gaussian();
    }
    return chol * u;
}

std::pair<FaultQualityModel, Dataset> generate(const Scenario& sc) {
    sc.validate();
    const int n = sc.dimension();
    const int num_groups = sc.num_groups();
    const int num_samples = num_groups * sc.samples_per_group;

    FaultQualityModel model = [&] {
        if (!sc.phi_file) {
            return sample_dictionary(sc.measurements, n, derive_seed(sc.seed, {kPhiStream}));
        }
        const Matrix user = load_matrix(*sc.phi_file);
        if (static_cast<int>(user.rows()) != sc.measurements ||
            static_cast<int>(user.cols()) != n) {
            throw DimensionMismatch("dictionary file is " + std::to_string(user.rows()) + "x" +
                                    std::to_string(user.cols()) + ", scenario expects " +
                                    std::to_string(sc.measurements) + "x" + std::to_string(n));
        }
        const std::vector<int> ids = sc.display_ids();
        Matrix phi(sc.measurements, n);
        for (int j = 0; j < n; ++j) {
            phi.col(j) = user.col(ids[static_cast<std::size_t>(j)] - 1);
        }
        return FaultQualityModel(std::move(phi));
    }();

    const CorrelationBlocks corr = build_correlation(sc);
    Matrix x(n, num_samples);
    std::vector<int> labels(static_cast<std::size_t>(num_samples));
    Rng draw_rng(derive_seed(sc.seed, {kDrawStream}));
    int col = 0;
    for (int g = 0; g < num_groups; ++g) {
        for (int s = 0; s < sc.samples_per_group; ++s, ++col) {
            for (int r = 0; r < sc.structure.num_blocks(); ++r) {
                const double v = sc.is_faulty(g, r) ? sc.fault_variance : sc.nonfault_variance;
                x.col(col).segment(sc.structure.offset(r), sc.structure.block(r).size) =
                    draw_kcc_block(v, corr, r, draw_rng);
            }
            labels[static_cast<std::size_t>(col)] = g;
        }
    }

    Matrix y = model.phi() * x;
    if (sc.noise_variance > 0.0) {
        const double sd = std::sqrt(sc.noise_variance);
        Rng noise_rng(derive_seed(sc.seed, {kNoiseStream}));
        for (int k = 0; k < num_samples; ++k) {
            for (int m = 0; m < sc.measurements; ++m) {
                y(m, k) += sd * noise_rng.gaussian();
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(num_samples));
    std::iota(order.begin(), order.end(), 0);
    if (sc.shuffle) {
        Rng shuffle_rng(derive_seed(sc.seed, {kShuffleStream}));
        order = shuffled_identity(num_samples, shuffle_rng);
    }

    GroundTruth truth;
    truth.x.resize(n, num_samples);
    truth.labels.resize(static_cast<std::size_t>(num_samples));
    truth.group_variance = sc.group_variances();
    truth.source_index = order;
    Matrix y_out(sc.measurements, num_samples);
    for (int p = 0; p < num_samples; ++p) {
        const int src = order[static_cast<std::size_t>(p)];
        truth.x.col(p) = x.col(src);
        truth.labels[static_cast<std::size_t>(p)] = labels[static_cast<std::size_t>(src)];
        y_out.col(p) = y.col(src);
    }
    return {std::move(model), Dataset(std::move(y_out), std::move(truth))};
}

} // namespace cssbl::datagen
