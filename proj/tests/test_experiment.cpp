#include <doctest.h>

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "cssbl/errors.hpp"
#include "cssbl/experiment.hpp"
#include "cssbl/rng.hpp"

namespace experiment = cssbl::experiment;

namespace {

// Small enough to run a full grid in well under a second.
const char* const kTinySpec = R"json({
  "scenario": {
    "measurements": 4,
    "kccs": 6,
    "correlated_sizes": [2],
    "correlations": [0.5],
    "groups": [[0], [1, 2]],
    "fault_variance": 1.0,
    "nonfault_variance": 0.01,
    "noise_variance": 1e-4,
    "samples_per_group": 4,
    "shuffle": true
  },
  "methods": [
    {"name": "cssbl", "groups": 2, "max_iters": 40}
  ],
  "sweep": [0.3, 0.7],
  "trials": 1,
  "base_seed": 5
})json";

std::filesystem::path fresh_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("cssbl_exp_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    REQUIRE(out.good());
}

int run_cli(const std::string& args, const std::filesystem::path& log) {
    const std::string cmd =
        std::string("\"") + CSSBL_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    return WEXITSTATUS(raw);
}

} // namespace

TEST_CASE("a spec round-trips through JSON parsing") {
    const auto spec = experiment::ExperimentSpec::from_json_text(kTinySpec, "tiny");
    CHECK(spec.scenario.dimension() == 6);
    CHECK(spec.scenario.measurements == 4);
    CHECK(spec.scenario.structure.num_correlated() == 1);
    CHECK(spec.scenario.samples_per_group == 4);
    CHECK(spec.methods.size() == 1);
    CHECK(spec.methods[0].name == "cssbl");
    CHECK(spec.methods[0].config.groups == 2);
    CHECK(spec.methods[0].config.max_iters == 40);
    CHECK(spec.methods[0].hyper.gamma_a == 1e-4);
    CHECK(spec.methods[0].hyper.alpha_b == 1e-4);
    CHECK(spec.sweep == std::vector<double>{0.3, 0.7});
    CHECK(spec.trials == 1);
    CHECK(spec.base_seed == 5);
    CHECK(spec.out_dir == std::filesystem::path("results"));
    CHECK(experiment::validate(spec).empty());
}

TEST_CASE("presets are loadable by name") {
    const auto numerical = experiment::ExperimentSpec::from_json_text(
        R"({"scenario": {"preset": "numerical"}, "methods": [{"name": "m"}], "sweep": [0.5]})",
        "preset");
    CHECK(numerical.scenario.dimension() == 40);
    CHECK(numerical.scenario.measurements == 8);
    CHECK(numerical.scenario.groups.size() == 2);
    const auto assembly = experiment::ExperimentSpec::from_json_text(
        R"({"scenario": {"preset": "assembly"}, "methods": [{"name": "m"}], "sweep": [0.5]})",
        "preset");
    CHECK(assembly.scenario.dimension() == 33);
    CHECK(assembly.scenario.measurements == 12);
    CHECK(assembly.scenario.kcc_ids.size() == 33);
}

TEST_CASE("hyperprior aliases are accepted one at a time") {
    const auto spec = experiment::ExperimentSpec::from_json_text(
        R"({"scenario": {"preset": "numerical"}, "sweep": [0.5],
            "methods": [{"name": "m", "a": 0.5, "gamma_b": 0.25, "d": 2.0}]})",
        "alias");
    CHECK(spec.methods[0].hyper.gamma_a == 0.5);
    CHECK(spec.methods[0].hyper.gamma_b == 0.25);
    CHECK(spec.methods[0].hyper.alpha_a == 1e-4);
    CHECK(spec.methods[0].hyper.alpha_b == 2.0);
    CHECK_THROWS_AS(experiment::ExperimentSpec::from_json_text(
                        R"({"scenario": {"preset": "numerical"}, "sweep": [0.5],
                            "methods": [{"name": "m", "a": 0.5, "gamma_a": 0.5}]})",
                        "alias"),
                    cssbl::ParseError);
}

TEST_CASE("malformed specs are rejected with parse errors") {
    using experiment::ExperimentSpec;
    CHECK_THROWS_AS(ExperimentSpec::from_json_text("{", "broken"), cssbl::ParseError);
    CHECK_THROWS_AS(ExperimentSpec::from_json_text(R"({"sweep": [0.5]})", "missing"),
                    cssbl::ParseError);
    CHECK_THROWS_AS(ExperimentSpec::from_json_text(
                        R"({"scenario": {"preset": "numerical"}, "sweep": [0.5],
                            "methods": [{"name": "m"}], "typo_key": 1})",
                        "top"),
                    cssbl::ParseError);
    CHECK_THROWS_AS(ExperimentSpec::from_json_text(
                        R"({"scenario": {"preset": "numerical", "typo": 1}, "sweep": [0.5],
                            "methods": [{"name": "m"}]})",
                        "scenario"),
                    cssbl::ParseError);
    CHECK_THROWS_AS(ExperimentSpec::from_json_text(
                        R"({"scenario": {"preset": "numerical"}, "sweep": [0.5],
                            "methods": [{"name": "m", "typo": 1}]})",
                        "method"),
                    cssbl::ParseError);
    CHECK_THROWS_AS(ExperimentSpec::from_json_text(
                        R"({"scenario": {"preset": "imaginary"}, "sweep": [0.5],
                            "methods": [{"name": "m"}]})",
                        "preset"),
                    cssbl::ParseError);
}

TEST_CASE("validation reports every violation without running") {
    auto spec = experiment::ExperimentSpec::from_json_text(kTinySpec, "tiny");

    auto sweep_breach = spec;
    sweep_breach.scenario = cssbl::datagen::numerical_preset(0.5, 0);
    sweep_breach.sweep = {-0.6};
    const auto diagnostics = experiment::validate(sweep_breach);
    REQUIRE(diagnostics.size() == 2); // one violation per correlated width-3 block
    CHECK(diagnostics[0].find("PD interval") != std::string::npos);

    auto duplicates = spec;
    duplicates.methods.push_back(duplicates.methods[0]);
    CHECK(experiment::validate(duplicates).size() == 1);

    auto bad_name = spec;
    bad_name.methods[0].name = "has space";
    CHECK(experiment::validate(bad_name).size() == 1);

    auto no_sweep = spec;
    no_sweep.sweep.clear();
    CHECK(experiment::validate(no_sweep).size() == 1);

    auto no_trials = spec;
    no_trials.trials = 0;
    CHECK(experiment::validate(no_trials).size() == 1);
}

TEST_CASE("an experiment run writes the results table and manifest") {
    auto spec = experiment::ExperimentSpec::from_json_text(kTinySpec, "tiny");
    spec.out_dir = fresh_dir("run");
    const auto output = experiment::run_experiment(spec);
    REQUIRE(output.exit_code == 0);
    REQUIRE(output.cells.size() == 2);
    CHECK(output.rows.size() == 2);
    for (const auto& cell : output.cells) {
        CHECK(cell.ok);
    }
    CHECK(output.cells[0].data_seed ==
          cssbl::derive_seed(5, {1, std::bit_cast<std::uint64_t>(0.3), 0}));
    CHECK(output.cells[0].init_seed ==
          cssbl::derive_seed(5, {2, std::bit_cast<std::uint64_t>(0.3), 0, 0}));
    CHECK(output.rows[0].k == 0.3);
    CHECK(output.rows[0].method == "cssbl");
    CHECK(output.rows[0].summary.trials == 1);
    CHECK(output.csv.rfind(std::string(experiment::kCsvHeader) + "\n", 0) == 0);
    CHECK(std::filesystem::exists(output.csv_path));
    CHECK(std::filesystem::exists(output.manifest_path));
    CHECK(read_file(output.csv_path) == output.csv);
    std::filesystem::remove_all(spec.out_dir);
}

TEST_CASE("repeated runs are byte-identical") {
    auto first = experiment::ExperimentSpec::from_json_text(kTinySpec, "tiny");
    first.out_dir = fresh_dir("rep1");
    auto second = first;
    second.out_dir = fresh_dir("rep2");
    const auto out1 = experiment::run_experiment(first);
    const auto out2 = experiment::run_experiment(second);
    REQUIRE(out1.exit_code == 0);
    REQUIRE(out2.exit_code == 0);
    CHECK(out1.csv == out2.csv);
    CHECK(read_file(out1.csv_path) == read_file(out2.csv_path));
    std::filesystem::remove_all(first.out_dir);
    std::filesystem::remove_all(second.out_dir);
}

TEST_CASE("replay re-runs one cell by coordinates") {
    auto spec = experiment::ExperimentSpec::from_json_text(kTinySpec, "tiny");
    spec.out_dir = fresh_dir("replay");

    std::ostringstream ok;
    REQUIRE(experiment::replay(spec, 0.3, "cssbl", 0, ok) == 0);
    const std::string report = ok.str();
    CHECK(report.find("cell k=0.3 method=cssbl trial=0") != std::string::npos);
    CHECK(report.find("data_seed=") != std::string::npos);
    CHECK(report.find("status=ok") != std::string::npos);
    CHECK(report.find("auc=") != std::string::npos);
    CHECK(report.find("estimated_correlations=") != std::string::npos);

    // The reported cell agrees with the same cell inside a full run.
    const auto output = experiment::run_experiment(spec);
    REQUIRE(output.exit_code == 0);
    std::ostringstream again;
    REQUIRE(experiment::replay(spec, 0.3, "cssbl", 0, again) == 0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "auc=%.10g", output.cells[0].result.auc);
    CHECK(again.str().find(buf) != std::string::npos);

    std::ostringstream sink;
    CHECK(experiment::replay(spec, 0.5, "cssbl", 0, sink) == 2);
    CHECK(experiment::replay(spec, 0.3, "nope", 0, sink) == 2);
    CHECK(experiment::replay(spec, 0.3, "cssbl", 7, sink) == 2);
    std::filesystem::remove_all(spec.out_dir);
}

TEST_CASE("the command line drives a full run") {
    const auto dir = fresh_dir("cli");
    const auto spec_path = dir / "spec.json";
    const auto out_dir = dir / "out";
    const auto log = dir / "log.txt";
    write_file(spec_path, kTinySpec);

    CHECK(run_cli("--spec \"" + spec_path.string() + "\" --validate-only", log) == 0);
    CHECK(read_file(log).find("spec is valid") != std::string::npos);

    CHECK(run_cli("--version", log) == 0);
    CHECK(read_file(log).find("cssbl") != std::string::npos);

    REQUIRE(run_cli("--spec \"" + spec_path.string() + "\" --out \"" + out_dir.string() + "\"",
                    log) == 0);
    CHECK(std::filesystem::exists(out_dir / "results.csv"));
    CHECK(std::filesystem::exists(out_dir / "manifest.json"));
    CHECK(read_file(log).find("k,method,mean_auc") != std::string::npos);

    CHECK(run_cli("--spec \"" + spec_path.string() + "\" --replay 0.3,cssbl,0", log) == 0);
    CHECK(read_file(log).find("status=ok") != std::string::npos);

    write_file(spec_path, R"({"scenario": {"preset": "numerical"}, "sweep": []})");
    CHECK(run_cli("--spec \"" + spec_path.string() + "\" --validate-only", log) == 2);
    std::filesystem::remove_all(dir);
}
