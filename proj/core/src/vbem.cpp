#include "cssbl/vbem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cssbl/errors.hpp"
#include "cssbl/numerics.hpp"
#include "cssbl/rng.hpp"

namespace cssbl::vbem {

namespace {

// Lower clamp keeping Gamma parameters strictly positive when a group's
// responsibility mass vanishes.
constexpr double kGammaFloor = 1e-12;

void check_dimensions(const FaultQualityModel& model, const Dataset& data,
                      const BlockStructure& structure) {
    if (data.measurements() != model.measurements()) {
        throw DimensionMismatch("dataset has " + std::to_string(data.measurements()) +
                                " measurements, model expects " +
                                std::to_string(model.measurements()));
    }
    if (structure.dimension() != model.kccs()) {
        throw DimensionMismatch("block structure spans " +
                                std::to_string(structure.dimension()) + " KCCs, model has " +
                                std::to_string(model.kccs()));
    }
}

void check_state(const VbState& state, const Dataset& data, const BlockStructure& structure,
                 const VbemConfig& cfg) {
    if (state.num_samples() != data.num_samples()) {
        throw DimensionMismatch("state holds " + std::to_string(state.num_samples()) +
                                " samples, dataset has " + std::to_string(data.num_samples()));
    }
    if (!(state.corr.structure() == structure)) {
        throw DimensionMismatch("state was built for a different block structure");
    }
    if (state.num_groups() != cfg.groups) {
        throw DimensionMismatch("state has " + std::to_string(state.num_groups()) +
                                " groups, config asks for " + std::to_string(cfg.groups));
    }
}

// Floor every responsibility and renormalize each row to sum to 1. The
// comparison is written to also catch NaN.
void floor_rows(Matrix& resp, double floor) {
    for (int k = 0; k < resp.rows(); ++k) {
        double sum = 0.0;
        for (int g = 0; g < resp.cols(); ++g) {
            double v = resp(k, g);
            if (!(v > floor)) {
                v = floor;
            }
            resp(k, g) = v;
            sum += v;
        }
        resp.row(k) /= sum;
    }
}

// Precision-side blocks B_r, hoisted out of the per-sample loops.
std::vector<Matrix> precision_blocks(const CorrelationBlocks& corr) {
    std::vector<Matrix> prec(corr.structure().num_blocks());
    for (std::size_t r = 0; r < prec.size(); ++r) {
        prec[r] = corr.precision_block(static_cast<int>(r));
    }
    return prec;
}

// moment(k, r) = Tr(B_r Sigma_{k,r}) + mu_{k,r}^T B_r mu_{k,r}, the
// quadratic statistic shared by the gamma and responsibility updates.
Matrix block_moments(const VbState& state, const BlockStructure& structure,
                     const std::vector<Matrix>& prec) {
    const int K = state.num_samples();
    const int R = structure.num_blocks();
    Matrix moment(K, R);
    for (int k = 0; k < K; ++k) {
        for (int r = 0; r < R; ++r) {
            const auto [mu_r, sigma_r] = block_slice(state, k, r);
            moment(k, r) = prec[r].cwiseProduct(sigma_r).sum() + mu_r.dot(prec[r] * mu_r);
        }
    }
    return moment;
}

void warn_if_starved(ConvergenceTrace& trace, int samples, int groups) {
    if (samples < groups) {
        trace.warnings.push_back("only " + std::to_string(samples) + " samples for " +
                                 std::to_string(groups) +
                                 " groups; surplus groups cannot receive a sample");
    }
}

std::pair<VbState, ConvergenceTrace> iterate(VbState state, std::vector<Vector> prev_mu,
                                             const FaultQualityModel& model, const Dataset& data,
                                             const BlockStructure& structure,
                                             const Hyperpriors& hyper, const VbemConfig& cfg,
                                             ConvergenceTrace trace) {
    const int K = state.num_samples();
    const int G = state.num_groups();
    for (int t = 1; t <= cfg.max_iters; ++t) {
        try {
            update_posteriors(state, model, data);
            update_gamma(state, structure, hyper);
            update_responsibilities(state, structure, cfg);
            update_alpha(state, model, data, hyper);
            update_correlation(state, structure, cfg);
        } catch (const NotPositiveDefinite& e) {
            throw NotPositiveDefinite("iteration " + std::to_string(t) + ": " + e.what());
        } catch (const NonFiniteLogit& e) {
            throw NonFiniteLogit("iteration " + std::to_string(t) + ": " + e.what());
        }

        double delta = 0.0;
        for (int k = 0; k < K; ++k) {
            delta = std::max(delta, (state.mu[k] - prev_mu[k]).cwiseAbs().maxCoeff());
            prev_mu[k] = state.mu[k];
        }
        state.iteration = t;
        trace.iterations = t;
        trace.mu_delta.push_back(delta);
        trace.alpha_mean.push_back(state.alpha_mean());
        std::vector<double> mass(G);
        for (int g = 0; g < G; ++g) {
            mass[g] = state.resp.col(g).sum();
        }
        trace.group_mass.push_back(std::move(mass));

        if (delta < cfg.conv_threshold) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(state), std::move(trace)};
}

} // namespace

void VbemConfig::validate() const {
    if (groups < 1) {
        throw DomainError("groups must be >= 1, got " + std::to_string(groups));
    }
    if (max_iters < 1) {
        throw DomainError("max_iters must be >= 1, got " + std::to_string(max_iters));
    }
    if (!(conv_threshold > 0.0)) {
        throw DomainError("conv_threshold must be positive");
    }
    if (!(resp_floor > 0.0) || !(resp_floor < 1.0 / groups)) {
        throw DomainError("resp_floor must lie in (0, 1/groups)");
    }
}

VbState initialize(const FaultQualityModel& model, const Dataset& data,
                   const BlockStructure& structure, const Hyperpriors& hyper,
                   const VbemConfig& cfg) {
    cfg.validate();
    hyper.validate();
    check_dimensions(model, data, structure);

    const int K = data.num_samples();
    const int G = cfg.groups;
    const int N = structure.dimension();

    VbState state(CorrelationBlocks::identity(structure));
    state.gamma_a = Matrix::Ones(G, structure.num_blocks());
    state.gamma_b = Matrix::Ones(G, structure.num_blocks());
    state.alpha_a = 1.0;
    state.alpha_b = 1.0;

    // Symmetric Dirichlet(1) responsibilities: normalized Exp(1) draws.
    state.resp.resize(K, G);
    Rng rng(cfg.init_seed);
    for (int k = 0; k < K; ++k) {
        for (int g = 0; g < G; ++g) {
            state.resp(k, g) = -std::log1p(-rng.uniform());
        }
        state.resp.row(k) /= state.resp.row(k).sum();
    }
    floor_rows(state.resp, cfg.resp_floor);

    state.mu.assign(K, Vector::Zero(N));
    state.sigma.assign(K, Matrix::Zero(N, N));
    update_posteriors(state, model, data);
    return state;
}

void update_posteriors(VbState& state, const FaultQualityModel& model, const Dataset& data) {
    check_dimensions(model, data, state.corr.structure());
    if (state.num_samples() != data.num_samples()) {
        throw DimensionMismatch("state holds " + std::to_string(state.num_samples()) +
                                " samples, dataset has " + std::to_string(data.num_samples()));
    }
    const Matrix& phi = model.phi();
    const Matrix gram = phi.transpose() * phi;
    const Matrix phi_t_y = phi.transpose() * data.y();
    const double alpha = state.alpha_mean();
    for (int k = 0; k < state.num_samples(); ++k) {
        const Matrix precision = alpha * gram + assemble_prior_precision(state, k);
        state.sigma[k] = numerics::invert_spd(precision);
        state.mu[k] = alpha * (state.sigma[k] * phi_t_y.col(k));
    }
}

void update_gamma(VbState& state, const BlockStructure& structure, const Hyperpriors& hyper) {
    hyper.validate();
    const auto prec = precision_blocks(state.corr);
    const Matrix moment = block_moments(state, structure, prec);
    const int K = state.num_samples();
    for (int g = 0; g < state.num_groups(); ++g) {
        for (int r = 0; r < structure.num_blocks(); ++r) {
            const int d = structure.block(r).size;
            double a = 2.0 * hyper.gamma_a - 1.0;
            double b = 2.0 * hyper.gamma_b;
            for (int k = 0; k < K; ++k) {
                a += d * state.resp(k, g);
                b += state.resp(k, g) * moment(k, r);
            }
            state.gamma_a(g, r) = std::max(a, kGammaFloor);
            state.gamma_b(g, r) = std::max(b, kGammaFloor);
        }
    }
}

void update_responsibilities(VbState& state, const BlockStructure& structure,
                             const VbemConfig& cfg) {
    cfg.validate();
    const int K = state.num_samples();
    const int G = state.num_groups();
    const int R = structure.num_blocks();
    const auto prec = precision_blocks(state.corr);
    const Matrix moment = block_moments(state, structure, prec);

    // Per-group constant and per-(g, r) precision rates, hoisted so digamma
    // runs G*R times instead of K*G*R.
    Vector base = Vector::Zero(G);
    Matrix rate(G, R);
    for (int g = 0; g < G; ++g) {
        for (int r = 0; r < R; ++r) {
            const int d = structure.block(r).size;
            const double a = state.gamma_a(g, r);
            const double b = state.gamma_b(g, r);
            base(g) += d * (numerics::digamma(a) - std::log(b)) +
                       state.corr.log_det_precision(r);
            rate(g, r) = a / b;
        }
    }

    std::vector<double> xi(G);
    for (int k = 0; k < K; ++k) {
        for (int g = 0; g < G; ++g) {
            double v = base(g);
            for (int r = 0; r < R; ++r) {
                v -= rate(g, r) * moment(k, r);
            }
            if (!std::isfinite(v)) {
                throw NonFiniteLogit("clustering logit is not finite for sample " +
                                     std::to_string(k) + ", group " + std::to_string(g));
            }
            xi[g] = v;
        }
        const std::vector<double> p = numerics::softmax(xi);
        for (int g = 0; g < G; ++g) {
            state.resp(k, g) = p[g];
        }
    }
    floor_rows(state.resp, cfg.resp_floor);
}

void update_alpha(VbState& state, const FaultQualityModel& model, const Dataset& data,
                  const Hyperpriors& hyper) {
    hyper.validate();
    const Matrix& phi = model.phi();
    const Matrix gram = phi.transpose() * phi;
    const int K = state.num_samples();
    double resid = 0.0;
    for (int k = 0; k < K; ++k) {
        resid += (data.y().col(k) - phi * state.mu[k]).squaredNorm();
        resid += state.sigma[k].cwiseProduct(gram).sum();
    }
    state.alpha_a = hyper.alpha_a + 0.5 * K * model.measurements();
    state.alpha_b = hyper.alpha_b + 0.5 * resid;
}

void update_correlation(VbState& state, const BlockStructure& structure, const VbemConfig& cfg) {
    if (!cfg.estimate_correlation) {
        return;
    }
    const int K = state.num_samples();
    const int G = state.num_groups();
    const double mass = state.resp.sum();
    for (int r = 0; r < structure.num_blocks(); ++r) {
        if (!structure.block(r).correlated) {
            continue;
        }
        const int d = structure.block(r).size;
        Matrix raw = Matrix::Zero(d, d);
        for (int k = 0; k < K; ++k) {
            double w = 0.0;
            for (int g = 0; g < G; ++g) {
                w += state.resp(k, g) * state.gamma_mean(g, r);
            }
            const auto [mu_r, sigma_r] = block_slice(state, k, r);
            raw += w * (sigma_r + mu_r * mu_r.transpose());
        }
        raw /= mass;
        state.corr.set_coefficient(r, project_equicorrelation(raw));
    }
}

double project_equicorrelation(const Matrix& raw, double delta) {
    if (raw.rows() != raw.cols()) {
        throw DomainError("projection input must be square");
    }
    const int d = static_cast<int>(raw.rows());
    if (d < 2) {
        throw DomainError("projection needs a block of size >= 2");
    }
    if (!(delta > 0.0)) {
        throw DomainError("projection margin must be positive");
    }
    const double lo = equicorrelation_lower_bound(d) + delta;
    const double hi = 1.0 - delta;
    if (!(lo < hi)) {
        throw DomainError("projection margin leaves an empty interval");
    }
    const double diag_mean = raw.diagonal().mean();
    if (!(diag_mean > 0.0)) {
        throw DomainError("moment matrix has non-positive mean diagonal");
    }
    const double off_mean =
        (raw.sum() - raw.diagonal().sum()) / (static_cast<double>(d) * (d - 1));
    return std::clamp(off_mean / diag_mean, lo, hi);
}

std::pair<VbState, ConvergenceTrace> run(const FaultQualityModel& model, const Dataset& data,
                                         const BlockStructure& structure,
                                         const Hyperpriors& hyper, const VbemConfig& cfg) {
    VbState state = initialize(model, data, structure, hyper, cfg);
    ConvergenceTrace trace;
    warn_if_starved(trace, data.num_samples(), cfg.groups);
    // The reference point for the first iteration's change is mu = 0, not
    // the initial posterior pass: iteration 1 recomputes mu from the same
    // inputs as that pass, and comparing the two identical vectors would
    // stop every run after one iteration.
    std::vector<Vector> prev(data.num_samples(), Vector::Zero(structure.dimension()));
    return iterate(std::move(state), std::move(prev), model, data, structure, hyper, cfg,
                   std::move(trace));
}

std::pair<VbState, ConvergenceTrace> run_from(VbState state, const FaultQualityModel& model,
                                              const Dataset& data,
                                              const BlockStructure& structure,
                                              const Hyperpriors& hyper, const VbemConfig& cfg) {
    cfg.validate();
    hyper.validate();
    check_dimensions(model, data, structure);
    check_state(state, data, structure, cfg);
    ConvergenceTrace trace;
    warn_if_starved(trace, data.num_samples(), cfg.groups);
    std::vector<Vector> prev = state.mu;
    return iterate(std::move(state), std::move(prev), model, data, structure, hyper, cfg,
                   std::move(trace));
}

Matrix estimate_variances(const VbState& state, const BlockStructure& structure) {
    if (!(state.corr.structure() == structure)) {
        throw DimensionMismatch("state was built for a different block structure");
    }
    const int G = state.num_groups();
    Matrix var(G, structure.dimension());
    for (int g = 0; g < G; ++g) {
        for (int r = 0; r < structure.num_blocks(); ++r) {
            const double v = state.gamma_b(g, r) / state.gamma_a(g, r);
            for (int j = 0; j < structure.block(r).size; ++j) {
                var(g, structure.offset(r) + j) = v;
            }
        }
    }
    return var;
}

} // namespace cssbl::vbem
