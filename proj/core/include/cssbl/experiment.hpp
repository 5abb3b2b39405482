#ifndef CSSBL_EXPERIMENT_HPP
#define CSSBL_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cssbl/datagen.hpp"
#include "cssbl/eval.hpp"
#include "cssbl/vbem.hpp"

namespace cssbl::experiment {

struct MethodSpec {
    std::string name;
    vbem::VbemConfig config; // init_seed is overwritten per cell
    Hyperpriors hyper;
    // Replace the scenario's block structure with all-singleton blocks for
    // inference (the data keeps its correlation); with groups=1 and
    // estimate_correlation=false this is the MSBL-style baseline.
    bool independent_structure = false;
};

// A sweep of correlation coefficients crossed with methods and seeded
// trials. Each sweep value replaces every correlated block's coefficient.
struct ExperimentSpec {
    datagen::Scenario scenario;
    std::vector<MethodSpec> methods;
    std::vector<double> sweep;
    int trials = 20;
    std::uint64_t base_seed = 0;
    std::filesystem::path out_dir = "results";
    bool write_traces = false;
    int jobs = 1;

    static ExperimentSpec load(const std::filesystem::path& path);
    static ExperimentSpec from_json_text(const std::string& text, const std::string& origin);
};

// All violations (PD-interval breaches, dimension mismatches, duplicate
// method names, bad counts), without running anything.
std::vector<std::string> validate(const ExperimentSpec& spec);

struct CellOutcome {
    int k_index = 0;
    int method_index = 0;
    int trial = 0;
    std::uint64_t data_seed = 0;
    std::uint64_t init_seed = 0;
    bool ok = false;
    std::string error; // carries (k, method, trial) coordinates
    eval::TrialResult result;
    std::vector<std::string> warnings;
};

struct RowSummary {
    double k = 0.0;
    std::string method;
    eval::Summary summary; // over the cells that completed
    int failed = 0;
};

struct ExperimentOutput {
    int exit_code = 0; // 0 ok, 2 validation failure, 3 any cell failed
    std::vector<std::string> diagnostics;
    std::vector<CellOutcome> cells; // ordered by (k index, method index, trial)
    std::vector<RowSummary> rows;   // ordered by (k index, method index)
    std::string csv;
    std::filesystem::path csv_path;
    std::filesystem::path manifest_path;
};

// Frozen table schema; extra diagnostics go to the manifest only.
extern const char* const kCsvHeader;

// Runs every (k, method, trial) cell on a bounded worker pool and writes
// results.csv plus manifest.json (and per-cell reports under traces/ when
// write_traces is set) into spec.out_dir. A failing cell is recorded and
// never suppresses other cells.
ExperimentOutput run_experiment(const ExperimentSpec& spec);

// Re-runs one cell by its coordinates and prints a detailed report.
// k must match a sweep entry exactly; trial is 0-based.
int replay(const ExperimentSpec& spec, double k, const std::string& method, int trial,
           std::ostream& out);

// One cell end to end: regenerate data, run inference, score.
CellOutcome run_cell(const ExperimentSpec& spec, int k_index, int method_index, int trial);

} // namespace cssbl::experiment

#endif
