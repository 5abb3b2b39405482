#ifndef CSSBL_FAULT_MODEL_HPP
#define CSSBL_FAULT_MODEL_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cssbl/types.hpp"

namespace cssbl {

// Plain-text matrix format shared by the loaders below: a "rows cols"
// header line followed by `rows` lines of `cols` space-separated decimals.
Matrix load_matrix(const std::filesystem::path& path);
Matrix read_matrix(std::istream& in, const std::string& origin);
void save_matrix(const Matrix& m, const std::filesystem::path& path);

// The M x N linear map from KCC deviations to KPC readings. Underdetermined
// (M < N) is permitted and expected; an all-zero column is rejected because
// that KCC would be unidentifiable.
class FaultQualityModel {
public:
    explicit FaultQualityModel(Matrix phi);

    int measurements() const { return static_cast<int>(phi_.rows()); } // M
    int kccs() const { return static_cast<int>(phi_.cols()); }         // N
    const Matrix& phi() const { return phi_; }

    static FaultQualityModel load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

private:
    Matrix phi_;
};

// Optional generative truth carried with a dataset. All fields are present
// together or not at all.
struct GroundTruth {
    Matrix x;                         // N x K true KCC vectors
    std::vector<int> labels;          // K true group labels (0-based)
    Matrix group_variance;            // G x N true variance per group
    std::vector<int> source_index;    // position -> pre-shuffle sample index
};

// K measurement samples, column per sample.
class Dataset {
public:
    explicit Dataset(Matrix y, std::optional<GroundTruth> truth = std::nullopt);

    int measurements() const { return static_cast<int>(y_.rows()); } // M
    int num_samples() const { return static_cast<int>(y_.cols()); }  // K
    const Matrix& y() const { return y_; }
    Vector sample(int k) const;

    bool has_truth() const { return truth_.has_value(); }
    const GroundTruth& truth() const;

    static Dataset load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

private:
    Matrix y_;
    std::optional<GroundTruth> truth_;
};

// Gamma hyperparameters: (a, b) for the per-block precisions gamma_{g,r} and
// a second pair for the noise precision alpha. All strictly positive.
struct Hyperpriors {
    double gamma_a = 1e-4;
    double gamma_b = 1e-4;
    double alpha_a = 1e-4;
    double alpha_b = 1e-4;

    void validate() const;
};

} // namespace cssbl

#endif
