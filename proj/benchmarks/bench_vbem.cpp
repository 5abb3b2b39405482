#include <benchmark/benchmark.h>

#include "cssbl/datagen.hpp"
#include "cssbl/numerics.hpp"
#include "cssbl/rng.hpp"
#include "cssbl/vbem.hpp"

namespace {

using namespace cssbl;

struct Fixture {
    datagen::Scenario scenario = datagen::numerical_preset(0.5, 7);
    FaultQualityModel model;
    Dataset data;
    VbState state;

    Fixture()
        : model(Matrix::Identity(1, 1)), data(Matrix::Zero(1, 1)), state(make()) {}

    VbState make() {
        auto [m, d] = datagen::generate(scenario);
        model = std::move(m);
        data = std::move(d);
        vbem::VbemConfig cfg;
        cfg.groups = 2;
        cfg.init_seed = 11;
        return vbem::initialize(model, data, scenario.structure, Hyperpriors{}, cfg);
    }
};

void BM_PosteriorPass(benchmark::State& bench) {
    Fixture f;
    for (auto _ : bench) {
        vbem::update_posteriors(f.state, f.model, f.data);
        benchmark::DoNotOptimize(f.state.mu.back());
    }
}
BENCHMARK(BM_PosteriorPass)->Unit(benchmark::kMillisecond);

void BM_FullIteration(benchmark::State& bench) {
    Fixture f;
    vbem::VbemConfig cfg;
    cfg.groups = 2;
    const Hyperpriors hyper;
    for (auto _ : bench) {
        vbem::update_posteriors(f.state, f.model, f.data);
        vbem::update_gamma(f.state, f.scenario.structure, hyper);
        vbem::update_responsibilities(f.state, f.scenario.structure, cfg);
        vbem::update_alpha(f.state, f.model, f.data, hyper);
        vbem::update_correlation(f.state, f.scenario.structure, cfg);
        benchmark::DoNotOptimize(f.state.alpha_b);
    }
}
BENCHMARK(BM_FullIteration)->Unit(benchmark::kMillisecond);

void BM_InvertSpd(benchmark::State& bench) {
    const auto n = static_cast<int>(bench.range(0));
    Rng rng(3);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = rng.gaussian();
        }
    }
    const Matrix spd = a * a.transpose() + static_cast<double>(n) * Matrix::Identity(n, n);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(numerics::invert_spd(spd));
    }
}
BENCHMARK(BM_InvertSpd)->Arg(8)->Arg(40)->Arg(128);

void BM_DrawKccBlock(benchmark::State& bench) {
    const BlockStructure structure({{6, true}});
    CorrelationBlocks corr(structure);
    corr.set_coefficient(0, 0.9);
    Rng rng(5);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(datagen::draw_kcc_block(1.0, corr, 0, rng));
    }
}
BENCHMARK(BM_DrawKccBlock);

} // namespace

BENCHMARK_MAIN();
