#ifndef CSSBL_EVAL_HPP
#define CSSBL_EVAL_HPP

#include <vector>

#include "cssbl/block_structure.hpp"
#include "cssbl/fault_model.hpp"
#include "cssbl/vb_state.hpp"
#include "cssbl/vbem.hpp"

namespace cssbl::eval {

struct TrialResult {
    double auc = 0.0;
    double nmse = 0.0;
    std::vector<int> matched_permutation; // true group -> estimated group
    bool converged = false;
    int iterations = 0;
};

struct Summary {
    int trials = 0;
    double mean_auc = 0.0;
    double sd_auc = 0.0;
    double min_auc = 0.0;
    double max_auc = 0.0;
    double mean_nmse = 0.0;
    double sd_nmse = 0.0;
    double min_nmse = 0.0;
    double max_nmse = 0.0;
    double conv_rate = 0.0;
    double mean_iterations = 0.0;
};

// Map each true group to the estimated group maximizing the responsibility
// mass on that group's samples. When the counts agree the map is a
// bijection found exhaustively (up to 6 groups, lowest lexicographic map on
// ties); otherwise each true group takes its argmax column independently
// (lowest index on ties), which covers single-group baselines scored
// against multi-group truth. num_true_groups = -1 infers the count from
// the labels.
std::vector<int> match_groups(const Matrix& resp, const std::vector<int>& true_labels,
                              int num_true_groups = -1);

// Mann-Whitney statistic: (#{score_pos > score_neg} + 0.5 #{ties}) /
// (#pos * #neg). Equals the trapezoidal ROC area.
double auc(const std::vector<double>& scores, const std::vector<bool>& labels);

// ||true_var - est_var||^2 / ||true_var||^2.
double nmse(const Vector& true_var, const Vector& est_var);

// Scores one completed run against ground truth: matches groups, pools
// (group, KCC) variance scores across all true groups, and computes AUC of
// faulty-vs-not plus NMSE of the variance surface. `trace` fills the
// convergence fields when given. per_group_auc switches the AUC to the
// mean of per-group AUCs instead of the pooled statistic.
TrialResult score_trial(const VbState& state, const GroundTruth& truth,
                        const BlockStructure& structure,
                        const vbem::ConvergenceTrace* trace = nullptr,
                        bool per_group_auc = false);

// Per-metric mean, population standard deviation, min, max, plus the
// fraction of converged trials.
Summary aggregate(const std::vector<TrialResult>& results);

} // namespace cssbl::eval

#endif
