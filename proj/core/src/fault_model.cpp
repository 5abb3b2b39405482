#include "cssbl/fault_model.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "cssbl/errors.hpp"

namespace cssbl {

Matrix read_matrix(std::istream& in, const std::string& origin) {
    long rows = 0, cols = 0;
    if (!(in >> rows >> cols)) {
        throw ParseError(origin + ": missing 'rows cols' header");
    }
    if (rows < 1 || cols < 1) {
        throw ParseError(origin + ": invalid dimensions " + std::to_string(rows) + "x" +
                         std::to_string(cols));
    }
    Matrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) {
            if (!(in >> m(i, j))) {
                throw ParseError(origin + ": truncated at row " + std::to_string(i) +
                                 ", col " + std::to_string(j));
            }
        }
    }
    return m;
}

Matrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open matrix file: " + path.string());
    }
    return read_matrix(in, path.string());
}

void save_matrix(const Matrix& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write matrix file: " + path.string());
    }
    out.precision(17);
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << m(i, j) << (j + 1 == m.cols() ? '\n' : ' ');
        }
    }
    if (!out) {
        throw ParseError("write failed: " + path.string());
    }
}

FaultQualityModel::FaultQualityModel(Matrix phi) : phi_(std::move(phi)) {
    if (phi_.rows() < 1 || phi_.cols() < 1) {
        throw DimensionMismatch("FaultQualityModel: matrix must be at least 1x1");
    }
    for (Eigen::Index j = 0; j < phi_.cols(); ++j) {
        if (phi_.col(j).cwiseAbs().maxCoeff() == 0.0) {
            throw DomainError("FaultQualityModel: column " + std::to_string(j) +
                              " is all zero; that KCC is unidentifiable");
        }
    }
}

FaultQualityModel FaultQualityModel::load(const std::filesystem::path& path) {
    return FaultQualityModel(load_matrix(path));
}

void FaultQualityModel::save(const std::filesystem::path& path) const {
    save_matrix(phi_, path);
}

Dataset::Dataset(Matrix y, std::optional<GroundTruth> truth)
    : y_(std::move(y)), truth_(std::move(truth)) {
    if (y_.rows() < 1 || y_.cols() < 1) {
        throw DimensionMismatch("Dataset: need at least one sample of dimension >= 1");
    }
    if (truth_) {
        const auto k = y_.cols();
        if (truth_->x.cols() != k || static_cast<Eigen::Index>(truth_->labels.size()) != k ||
            static_cast<Eigen::Index>(truth_->source_index.size()) != k) {
            throw DimensionMismatch("Dataset: ground truth fields disagree on sample count");
        }
        if (truth_->x.rows() < 1 || truth_->group_variance.rows() < 1 ||
            truth_->group_variance.cols() != truth_->x.rows()) {
            throw DimensionMismatch("Dataset: ground truth variance/KCC dimensions disagree");
        }
        for (int label : truth_->labels) {
            if (label < 0 || label >= truth_->group_variance.rows()) {
                throw DomainError("Dataset: truth label " + std::to_string(label) +
                                  " outside group range");
            }
        }
    }
}

Vector Dataset::sample(int k) const {
    if (k < 0 || k >= num_samples()) {
        throw IndexOutOfRange("Dataset: sample " + std::to_string(k) + " out of range");
    }
    return y_.col(k);
}

const GroundTruth& Dataset::truth() const {
    if (!truth_) {
        throw DomainError("Dataset: no ground truth attached");
    }
    return *truth_;
}

Dataset Dataset::load(const std::filesystem::path& path) {
    return Dataset(load_matrix(path));
}

void Dataset::save(const std::filesystem::path& path) const {
    save_matrix(y_, path);
}

void Hyperpriors::validate() const {
    if (!(gamma_a > 0.0 && gamma_b > 0.0 && alpha_a > 0.0 && alpha_b > 0.0)) {
        throw DomainError("Hyperpriors: all parameters must be strictly positive");
    }
}

} // namespace cssbl
