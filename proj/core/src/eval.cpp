#include "cssbl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cssbl/errors.hpp"

namespace cssbl::eval {

namespace {

constexpr int kMaxExhaustiveGroups = 6;

struct Moments {
    double mean;
    double sd;
    double min;
    double max;
};

Moments moments(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / n), *std::min_element(v.begin(), v.end()),
            *std::max_element(v.begin(), v.end())};
}

} // namespace

std::vector<int> match_groups(const Matrix& resp, const std::vector<int>& true_labels,
                              int num_true_groups) {
    const int num_samples = static_cast<int>(resp.rows());
    const int est_groups = static_cast<int>(resp.cols());
    if (num_samples != static_cast<int>(true_labels.size())) {
        throw DimensionMismatch("responsibilities cover " + std::to_string(num_samples) +
                                " samples, labels cover " +
                                std::to_string(true_labels.size()));
    }
    if (num_samples == 0 || est_groups == 0) {
        throw EmptyInput("match_groups needs at least one sample and one group");
    }
    int true_groups = num_true_groups;
    if (true_groups < 0) {
        true_groups = 1 + *std::max_element(true_labels.begin(), true_labels.end());
    }
    for (int label : true_labels) {
        if (label < 0 || label >= true_groups) {
            throw IndexOutOfRange("label " + std::to_string(label) + " outside [0, " +
                                  std::to_string(true_groups) + ")");
        }
    }

    // mass(t, e) = total responsibility that true group t's samples put on
    // estimated group e.
    Matrix mass = Matrix::Zero(true_groups, est_groups);
    for (int k = 0; k < num_samples; ++k) {
        mass.row(true_labels[static_cast<std::size_t>(k)]) += resp.row(k);
    }

    if (true_groups != est_groups) {
        std::vector<int> map(static_cast<std::size_t>(true_groups));
        for (int t = 0; t < true_groups; ++t) {
            int best = 0;
            for (int e = 1; e < est_groups; ++e) {
                if (mass(t, e) > mass(t, best)) {
                    best = e;
                }
            }
            map[static_cast<std::size_t>(t)] = best;
        }
        return map;
    }

    if (true_groups > kMaxExhaustiveGroups) {
        throw GroupCountMismatch("exhaustive matching handles at most " +
                                 std::to_string(kMaxExhaustiveGroups) + " groups, got " +
                                 std::to_string(true_groups));
    }
    std::vector<int> candidate(static_cast<std::size_t>(true_groups));
    std::iota(candidate.begin(), candidate.end(), 0);
    std::vector<int> best = candidate;
    double best_score = -std::numeric_limits<double>::infinity();
    do {
        double score = 0.0;
        for (int t = 0; t < true_groups; ++t) {
            score += mass(t, candidate[static_cast<std::size_t>(t)]);
        }
        // Strict improvement keeps the lexicographically first maximizer,
        // since next_permutation enumerates in lexicographic order.
        if (score > best_score) {
            best_score = score;
            best = candidate;
        }
    } while (std::next_permutation(candidate.begin(), candidate.end()));
    return best;
}

double auc(const std::vector<double>& scores, const std::vector<bool>& labels) {
    if (scores.size() != labels.size()) {
        throw DimensionMismatch("got " + std::to_string(scores.size()) + " scores for " +
                                std::to_string(labels.size()) + " labels");
    }
    for (double s : scores) {
        if (!std::isfinite(s)) {
            throw DomainError("AUC scores must be finite");
        }
    }
    std::vector<double> pos;
    std::vector<double> neg;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        (labels[i] ? pos : neg).push_back(scores[i]);
    }
    if (pos.empty() || neg.empty()) {
        throw DegenerateLabels("AUC needs at least one positive and one negative label");
    }
    double wins = 0.0;
    for (double p : pos) {
        for (double n : neg) {
            if (p > n) {
                wins += 1.0;
            } else if (p == n) {
                wins += 0.5;
            }
        }
    }
    return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

double nmse(const Vector& true_var, const Vector& est_var) {
    if (true_var.size() != est_var.size()) {
        throw DimensionMismatch("variance vectors have lengths " +
                                std::to_string(true_var.size()) + " and " +
                                std::to_string(est_var.size()));
    }
    const double denom = true_var.squaredNorm();
    if (denom == 0.0) {
        throw ZeroTruth("NMSE is undefined for an all-zero truth vector");
    }
    return (true_var - est_var).squaredNorm() / denom;
}

TrialResult score_trial(const VbState& state, const GroundTruth& truth,
                        const BlockStructure& structure, const vbem::ConvergenceTrace* trace,
                        bool per_group_auc) {
    const Matrix est = vbem::estimate_variances(state, structure);
    const int true_groups = static_cast<int>(truth.group_variance.rows());
    const int n = structure.dimension();
    if (static_cast<int>(truth.group_variance.cols()) != n) {
        throw DimensionMismatch("ground-truth variance surface covers " +
                                std::to_string(truth.group_variance.cols()) + " KCCs, not " +
                                std::to_string(n));
    }
    const std::vector<int> map = match_groups(state.resp, truth.labels, true_groups);

    // A KCC counts as faulty when its true variance sits at the high level.
    const double threshold =
        0.5 * (truth.group_variance.minCoeff() + truth.group_variance.maxCoeff());

    Vector pooled_true(static_cast<Eigen::Index>(true_groups) * n);
    Vector pooled_est(pooled_true.size());
    std::vector<double> scores;
    std::vector<bool> labels;
    scores.reserve(static_cast<std::size_t>(pooled_true.size()));
    labels.reserve(static_cast<std::size_t>(pooled_true.size()));
    std::vector<double> group_auc;
    for (int t = 0; t < true_groups; ++t) {
        std::vector<double> row_scores;
        std::vector<bool> row_labels;
        for (int j = 0; j < n; ++j) {
            const double score = est(map[static_cast<std::size_t>(t)], j);
            const bool faulty = truth.group_variance(t, j) > threshold;
            pooled_true(static_cast<Eigen::Index>(t) * n + j) = truth.group_variance(t, j);
            pooled_est(static_cast<Eigen::Index>(t) * n + j) = score;
            scores.push_back(score);
            labels.push_back(faulty);
            row_scores.push_back(score);
            row_labels.push_back(faulty);
        }
        if (per_group_auc) {
            group_auc.push_back(auc(row_scores, row_labels));
        }
    }

    TrialResult result;
    result.auc = per_group_auc ? std::accumulate(group_auc.begin(), group_auc.end(), 0.0) /
                                     static_cast<double>(group_auc.size())
                               : auc(scores, labels);
    result.nmse = nmse(pooled_true, pooled_est);
    result.matched_permutation = map;
    result.iterations = trace ? trace->iterations : state.iteration;
    result.converged = trace ? trace->converged : false;
    return result;
}

Summary aggregate(const std::vector<TrialResult>& results) {
    if (results.empty()) {
        throw EmptyInput("aggregate needs at least one trial");
    }
    std::vector<double> aucs;
    std::vector<double> nmses;
    std::vector<double> iters;
    double converged = 0.0;
    for (const auto& r : results) {
        aucs.push_back(r.auc);
        nmses.push_back(r.nmse);
        iters.push_back(static_cast<double>(r.iterations));
        converged += r.converged ? 1.0 : 0.0;
    }
    const Moments a = moments(aucs);
    const Moments m = moments(nmses);
    Summary s;
    s.trials = static_cast<int>(results.size());
    s.mean_auc = a.mean;
    s.sd_auc = a.sd;
    s.min_auc = a.min;
    s.max_auc = a.max;
    s.mean_nmse = m.mean;
    s.sd_nmse = m.sd;
    s.min_nmse = m.min;
    s.max_nmse = m.max;
    s.conv_rate = converged / static_cast<double>(results.size());
    s.mean_iterations = moments(iters).mean;
    return s;
}

} // namespace cssbl::eval
