#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cssbl/errors.hpp"
#include "cssbl/experiment.hpp"

namespace {

// "k,method,trial" -> parsed coordinates; method names never contain commas
// (validation enforces filesystem-safe names).
bool parse_replay(const std::string& arg, double& k, std::string& method, int& trial) {
    const auto first = arg.find(',');
    const auto last = arg.rfind(',');
    if (first == std::string::npos || first == last) {
        return false;
    }
    try {
        std::size_t used = 0;
        k = std::stod(arg.substr(0, first), &used);
        if (used != first) {
            return false;
        }
        method = arg.substr(first + 1, last - first - 1);
        const std::string trial_text = arg.substr(last + 1);
        trial = std::stoi(trial_text, &used);
        if (used != trial_text.size()) {
            return false;
        }
    } catch (const std::exception&) {
        return false;
    }
    return !method.empty();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance-fault diagnosis experiments: sweep correlation "
                 "coefficients over seeded trials and tabulate AUC/NMSE per method"};
    app.set_version_flag("--version", "cssbl 0.1.0");

    std::string spec_path;
    std::string out_dir;
    int trials = 0;
    int jobs = 0;
    std::string replay_arg;
    bool validate_only = false;
    bool traces = false;

    app.add_option("--spec", spec_path, "Experiment spec (JSON)")->required();
    app.add_option("--out", out_dir, "Output directory (overrides the spec)");
    app.add_option("--trials", trials, "Trials per cell (overrides the spec)");
    app.add_option("--jobs", jobs, "Worker threads (overrides the spec)");
    app.add_option("--replay", replay_arg, "Re-run one cell: k,method,trial");
    app.add_flag("--validate-only", validate_only, "Check the spec and exit");
    app.add_flag("--traces", traces, "Write per-cell convergence reports");

    CLI11_PARSE(app, argc, argv);

    try {
        cssbl::experiment::ExperimentSpec spec =
            cssbl::experiment::ExperimentSpec::load(spec_path);
        if (!out_dir.empty()) {
            spec.out_dir = out_dir;
        }
        if (app.count("--trials") > 0) {
            spec.trials = trials;
        }
        if (app.count("--jobs") > 0) {
            spec.jobs = jobs;
        }
        if (traces) {
            spec.write_traces = true;
        }

        if (validate_only) {
            const auto diagnostics = cssbl::experiment::validate(spec);
            if (diagnostics.empty()) {
                std::cout << "spec is valid\n";
                return 0;
            }
            for (const auto& d : diagnostics) {
                std::cerr << "invalid spec: " << d << "\n";
            }
            return 2;
        }

        if (!replay_arg.empty()) {
            double k = 0.0;
            std::string method;
            int trial = 0;
            if (!parse_replay(replay_arg, k, method, trial)) {
                std::cerr << "--replay expects k,method,trial (e.g. 0.9,cssbl,3)\n";
                return 2;
            }
            return cssbl::experiment::replay(spec, k, method, trial, std::cout);
        }

        const auto output = cssbl::experiment::run_experiment(spec);
        for (const auto& d : output.diagnostics) {
            std::cerr << "invalid spec: " << d << "\n";
        }
        if (output.exit_code == 2) {
            return 2;
        }
        std::cout << output.csv;
        std::cout << "wrote " << output.csv_path.string() << " and "
                  << output.manifest_path.string() << "\n";
        if (output.exit_code != 0) {
            for (const auto& cell : output.cells) {
                if (!cell.ok) {
                    std::cerr << "failed cell: " << cell.error << "\n";
                }
            }
        }
        return output.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
