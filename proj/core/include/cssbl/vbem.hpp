#ifndef CSSBL_VBEM_HPP
#define CSSBL_VBEM_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cssbl/block_structure.hpp"
#include "cssbl/fault_model.hpp"
#include "cssbl/vb_state.hpp"

namespace cssbl::vbem {

struct VbemConfig {
    int groups = 1;               // G
    int max_iters = 500;          // T
    double conv_threshold = 1e-6; // s, applied to the max-norm change of mu
    double resp_floor = 1e-8;     // responsibility floor, in (0, 1/G)
    std::uint64_t init_seed = 0;
    // false freezes the correlation blocks at their initial (identity)
    // value; together with groups=1 this is the MSBL-style baseline.
    bool estimate_correlation = true;

    void validate() const;
};

struct ConvergenceTrace {
    std::vector<double> mu_delta;               // per-iteration max-norm change
    std::vector<double> alpha_mean;             // per-iteration E[alpha]
    std::vector<std::vector<double>> group_mass; // per-iteration sum_k E[z_{k,g}]
    bool converged = false;
    int iterations = 0;
    std::vector<std::string> warnings;
};

// State with B = identity, E[alpha] = 1, E[gamma] = 1, responsibilities
// drawn from a symmetric Dirichlet(1) per sample (floored and
// renormalized), and mu/Sigma filled in by one posterior pass.
VbState initialize(const FaultQualityModel& model, const Dataset& data,
                   const BlockStructure& structure, const Hyperpriors& hyper,
                   const VbemConfig& cfg);

// mu_k = E[alpha] Sigma_k Phi^T y_k,
// Sigma_k = (E[alpha] Phi^T Phi + assemble_prior_precision(k))^{-1}.
void update_posteriors(VbState& state, const FaultQualityModel& model, const Dataset& data);

// a_{g,r} = 2a - 1 + sum_k ncol(B_r) E[z_{k,g}],
// b_{g,r} = 2b + sum_k E[z_{k,g}] Tr(B_r (Sigma_{k,r} + mu_{k,r} mu_{k,r}^T)),
// both clamped below at 1e-12.
void update_gamma(VbState& state, const BlockStructure& structure, const Hyperpriors& hyper);

// Softmax over the clustering logits xi_{k,g}, floored and renormalized.
void update_responsibilities(VbState& state, const BlockStructure& structure,
                             const VbemConfig& cfg);

// a_alpha = a + KM/2,
// b_alpha = b + (1/2) sum_k (||y_k - Phi mu_k||^2 + Tr(Phi Sigma_k Phi^T)).
void update_alpha(VbState& state, const FaultQualityModel& model, const Dataset& data,
                  const Hyperpriors& hyper);

// M-step: re-estimate each correlated block's coefficient from the moment
// matrix and project back onto the equicorrelation structure.
void update_correlation(VbState& state, const BlockStructure& structure, const VbemConfig& cfg);

// Equicorrelation projection of a raw moment matrix: k = (mean of
// off-diagonal entries) / (mean of diagonal entries), clamped to the open
// PD interval shrunk by delta.
double project_equicorrelation(const Matrix& raw, double delta = 1e-6);

// Full loop: posterior pass, gamma, responsibilities, alpha, then the
// correlation M-step, until the max-norm change of mu drops below the
// threshold or max_iters is reached.
std::pair<VbState, ConvergenceTrace> run(const FaultQualityModel& model, const Dataset& data,
                                         const BlockStructure& structure,
                                         const Hyperpriors& hyper, const VbemConfig& cfg);

// Same loop continuing from an existing state. The first iteration's change
// is measured against the incoming mu, so a self-consistent fixed point
// terminates after one iteration.
std::pair<VbState, ConvergenceTrace> run_from(VbState state, const FaultQualityModel& model,
                                              const Dataset& data,
                                              const BlockStructure& structure,
                                              const Hyperpriors& hyper, const VbemConfig& cfg);

// G x N estimated variances: b_{g,r} / a_{g,r} replicated across block r's
// members. This is the fault-score surface consumed by eval.
Matrix estimate_variances(const VbState& state, const BlockStructure& structure);

} // namespace cssbl::vbem

#endif
