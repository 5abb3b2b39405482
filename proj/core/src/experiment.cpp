#include "cssbl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cssbl/errors.hpp"

namespace cssbl::experiment {

namespace {

using nlohmann::json;

// Sub-stream ids: data depends on (k, trial) only, so every method sees the
// same samples; initialization additionally depends on the method.
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kInitStream = 2;

std::string fmt(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void require_keys(const json& j, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* key) {
                return it.key() == key;
            }) == allowed.end()) {
            throw ParseError(where + ": unknown key '" + it.key() + "'");
        }
    }
}

// One value under either its full name or its short alias, never both.
double pick_alias(const json& j, const char* name, const char* alias, double fallback) {
    const bool has_name = j.contains(name);
    const bool has_alias = j.contains(alias);
    if (has_name && has_alias) {
        throw ParseError(std::string("give either '") + name + "' or '" + alias +
                         "', not both");
    }
    if (has_name) {
        return j.at(name).get<double>();
    }
    if (has_alias) {
        return j.at(alias).get<double>();
    }
    return fallback;
}

datagen::Scenario parse_scenario(const json& j) {
    require_keys(j, "scenario",
                 {"preset", "measurements", "kccs", "correlated_sizes", "correlations",
                  "groups", "fault_variance", "nonfault_variance", "noise_variance",
                  "samples_per_group", "shuffle", "kcc_ids", "phi_file"});
    datagen::Scenario sc;
    if (j.contains("preset")) {
        const auto name = j.at("preset").get<std::string>();
        if (name == "numerical") {
            sc = datagen::numerical_preset(0.0, 0);
        } else if (name == "assembly") {
            sc = datagen::assembly_preset(0.0, 0);
        } else {
            throw ParseError("unknown scenario preset '" + name +
                             "' (known: numerical, assembly)");
        }
    }
    if (j.contains("correlated_sizes") || j.contains("kccs")) {
        if (!j.contains("correlated_sizes") || !j.contains("kccs")) {
            throw ParseError("scenario: correlated_sizes and kccs must be given together");
        }
        const auto sizes = j.at("correlated_sizes").get<std::vector<int>>();
        const int n = j.at("kccs").get<int>();
        sc.structure = sizes.empty() ? BlockStructure::all_independent(n)
                                     : BlockStructure::with_independent_tail(sizes, n);
        sc.correlations.assign(static_cast<std::size_t>(sc.structure.num_correlated()), 0.0);
        sc.kcc_ids.clear();
    }
    if (j.contains("measurements")) {
        sc.measurements = j.at("measurements").get<int>();
    }
    if (j.contains("correlations")) {
        sc.correlations = j.at("correlations").get<std::vector<double>>();
    }
    if (j.contains("groups")) {
        sc.groups = j.at("groups").get<std::vector<std::vector<int>>>();
    }
    if (j.contains("fault_variance")) {
        sc.fault_variance = j.at("fault_variance").get<double>();
    }
    if (j.contains("nonfault_variance")) {
        sc.nonfault_variance = j.at("nonfault_variance").get<double>();
    }
    if (j.contains("noise_variance")) {
        sc.noise_variance = j.at("noise_variance").get<double>();
    }
    if (j.contains("samples_per_group")) {
        sc.samples_per_group = j.at("samples_per_group").get<int>();
    }
    if (j.contains("shuffle")) {
        sc.shuffle = j.at("shuffle").get<bool>();
    }
    if (j.contains("kcc_ids")) {
        sc.kcc_ids = j.at("kcc_ids").get<std::vector<int>>();
    }
    if (j.contains("phi_file")) {
        sc.phi_file = std::filesystem::path(j.at("phi_file").get<std::string>());
    }
    return sc;
}

MethodSpec parse_method(const json& j) {
    require_keys(j, "method",
                 {"name", "groups", "max_iters", "conv_threshold", "resp_floor",
                  "estimate_correlation", "independent_structure", "gamma_a", "a", "gamma_b",
                  "b", "alpha_a", "c", "alpha_b", "d"});
    MethodSpec m;
    m.name = j.at("name").get<std::string>();
    if (j.contains("groups")) {
        m.config.groups = j.at("groups").get<int>();
    }
    if (j.contains("max_iters")) {
        m.config.max_iters = j.at("max_iters").get<int>();
    }
    if (j.contains("conv_threshold")) {
        m.config.conv_threshold = j.at("conv_threshold").get<double>();
    }
    if (j.contains("resp_floor")) {
        m.config.resp_floor = j.at("resp_floor").get<double>();
    }
    if (j.contains("estimate_correlation")) {
        m.config.estimate_correlation = j.at("estimate_correlation").get<bool>();
    }
    if (j.contains("independent_structure")) {
        m.independent_structure = j.at("independent_structure").get<bool>();
    }
    m.hyper.gamma_a = pick_alias(j, "gamma_a", "a", m.hyper.gamma_a);
    m.hyper.gamma_b = pick_alias(j, "gamma_b", "b", m.hyper.gamma_b);
    m.hyper.alpha_a = pick_alias(j, "alpha_a", "c", m.hyper.alpha_a);
    m.hyper.alpha_b = pick_alias(j, "alpha_b", "d", m.hyper.alpha_b);
    return m;
}

json scenario_to_json(const datagen::Scenario& sc) {
    std::vector<int> correlated_sizes;
    for (int i = 0; i < sc.structure.num_correlated(); ++i) {
        correlated_sizes.push_back(sc.structure.block(i).size);
    }
    json j{{"measurements", sc.measurements},
           {"kccs", sc.dimension()},
           {"correlated_sizes", correlated_sizes},
           {"correlations", sc.correlations},
           {"groups", sc.groups},
           {"fault_variance", sc.fault_variance},
           {"nonfault_variance", sc.nonfault_variance},
           {"noise_variance", sc.noise_variance},
           {"samples_per_group", sc.samples_per_group},
           {"shuffle", sc.shuffle},
           {"kcc_ids", sc.display_ids()}};
    if (sc.phi_file) {
        j["phi_file"] = sc.phi_file->string();
    }
    return j;
}

json spec_to_json(const ExperimentSpec& spec) {
    json methods = json::array();
    for (const auto& m : spec.methods) {
        methods.push_back({{"name", m.name},
                           {"groups", m.config.groups},
                           {"max_iters", m.config.max_iters},
                           {"conv_threshold", m.config.conv_threshold},
                           {"resp_floor", m.config.resp_floor},
                           {"estimate_correlation", m.config.estimate_correlation},
                           {"independent_structure", m.independent_structure},
                           {"gamma_a", m.hyper.gamma_a},
                           {"gamma_b", m.hyper.gamma_b},
                           {"alpha_a", m.hyper.alpha_a},
                           {"alpha_b", m.hyper.alpha_b}});
    }
    return json{{"scenario", scenario_to_json(spec.scenario)},
                {"methods", methods},
                {"sweep", spec.sweep},
                {"trials", spec.trials},
                {"base_seed", spec.base_seed},
                {"out_dir", spec.out_dir.string()},
                {"jobs", spec.jobs},
                {"write_traces", spec.write_traces}};
}

std::string coords(double k, const std::string& method, int trial) {
    return "k=" + fmt(k) + " method=" + method + " trial=" + std::to_string(trial);
}

json cell_report(const ExperimentSpec& spec, const CellOutcome& cell,
                 const datagen::Scenario& sc, const BlockStructure& structure,
                 const VbState& state, const vbem::ConvergenceTrace& trace) {
    std::vector<double> correlations;
    for (int i = 0; i < structure.num_correlated(); ++i) {
        correlations.push_back(state.corr.coefficient(i));
    }
    const Matrix var = vbem::estimate_variances(state, structure);
    json per_group = json::array();
    for (int g = 0; g < var.rows(); ++g) {
        std::vector<double> row(var.cols());
        for (int n = 0; n < var.cols(); ++n) {
            row[static_cast<std::size_t>(n)] = var(g, n);
        }
        per_group.push_back(row);
    }
    return json{{"k", spec.sweep[static_cast<std::size_t>(cell.k_index)]},
                {"method", spec.methods[static_cast<std::size_t>(cell.method_index)].name},
                {"trial", cell.trial},
                {"data_seed", cell.data_seed},
                {"init_seed", cell.init_seed},
                {"converged", cell.result.converged},
                {"iterations", cell.result.iterations},
                {"auc", cell.result.auc},
                {"nmse", cell.result.nmse},
                {"matched_permutation", cell.result.matched_permutation},
                {"estimated_correlations", correlations},
                {"kcc_ids", sc.display_ids()},
                {"estimated_variances", per_group},
                {"warnings", cell.warnings},
                {"trace",
                 json{{"mu_delta", trace.mu_delta},
                      {"alpha_mean", trace.alpha_mean},
                      {"group_mass", trace.group_mass}}}};
}

CellOutcome execute_cell(const ExperimentSpec& spec, int k_index, int method_index, int trial,
                         json* report) {
    CellOutcome cell;
    cell.k_index = k_index;
    cell.method_index = method_index;
    cell.trial = trial;
    const double k = spec.sweep[static_cast<std::size_t>(k_index)];
    const MethodSpec& method = spec.methods[static_cast<std::size_t>(method_index)];
    cell.data_seed = derive_seed(spec.base_seed, {kDataStream, std::bit_cast<std::uint64_t>(k),
                                                  static_cast<std::uint64_t>(trial)});
    cell.init_seed = derive_seed(spec.base_seed, {kInitStream, std::bit_cast<std::uint64_t>(k),
                                                  static_cast<std::uint64_t>(trial),
                                                  static_cast<std::uint64_t>(method_index)});
    try {
        datagen::Scenario sc = spec.scenario;
        std::fill(sc.correlations.begin(), sc.correlations.end(), k);
        sc.seed = cell.data_seed;
        auto [model, data] = datagen::generate(sc);
        const BlockStructure structure = method.independent_structure
                                             ? BlockStructure::all_independent(sc.dimension())
                                             : sc.structure;
        vbem::VbemConfig cfg = method.config;
        cfg.init_seed = cell.init_seed;
        auto [state, trace] = vbem::run(model, data, structure, method.hyper, cfg);
        cell.result = eval::score_trial(state, data.truth(), structure, &trace);
        cell.warnings = trace.warnings;
        cell.ok = true;
        if (report) {
            *report = cell_report(spec, cell, sc, structure, state, trace);
        }
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = coords(k, method.name, trial) + ": " + e.what();
    }
    return cell;
}

std::string trace_filename(double k, const std::string& method, int trial) {
    return "trace_k" + fmt(k) + "_" + method + "_t" + std::to_string(trial) + ".json";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
}

std::string render_csv(const ExperimentSpec& spec, const std::vector<RowSummary>& rows) {
    std::string csv = std::string(kCsvHeader) + "\n";
    for (const auto& row : rows) {
        csv += fmt(row.k) + "," + row.method + ",";
        if (row.summary.trials == 0) {
            csv += "nan,nan,nan,nan,nan,0\n";
            continue;
        }
        csv += fmt(row.summary.mean_auc) + "," + fmt(row.summary.sd_auc) + "," +
               fmt(row.summary.mean_nmse) + "," + fmt(row.summary.sd_nmse) + "," +
               fmt(row.summary.conv_rate) + "," + std::to_string(row.summary.trials) + "\n";
    }
    (void)spec;
    return csv;
}

} // namespace

const char* const kCsvHeader = "k,method,mean_auc,sd_auc,mean_nmse,sd_nmse,conv_rate,trials";

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text,
                                              const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    try {
        require_keys(j, origin,
                     {"scenario", "methods", "sweep", "trials", "base_seed", "out_dir", "jobs",
                      "write_traces"});
        ExperimentSpec spec;
        if (!j.contains("scenario") || !j.contains("methods") || !j.contains("sweep")) {
            throw ParseError(origin + ": scenario, methods, and sweep are required");
        }
        spec.scenario = parse_scenario(j.at("scenario"));
        for (const auto& m : j.at("methods")) {
            spec.methods.push_back(parse_method(m));
        }
        spec.sweep = j.at("sweep").get<std::vector<double>>();
        if (j.contains("trials")) {
            spec.trials = j.at("trials").get<int>();
        }
        if (j.contains("base_seed")) {
            spec.base_seed = j.at("base_seed").get<std::uint64_t>();
        }
        if (j.contains("out_dir")) {
            spec.out_dir = std::filesystem::path(j.at("out_dir").get<std::string>());
        }
        if (j.contains("jobs")) {
            spec.jobs = j.at("jobs").get<int>();
        }
        if (j.contains("write_traces")) {
            spec.write_traces = j.at("write_traces").get<bool>();
        }
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

ExperimentSpec ExperimentSpec::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ExperimentSpec spec = from_json_text(buf.str(), path.string());
    if (spec.scenario.phi_file && spec.scenario.phi_file->is_relative()) {
        spec.scenario.phi_file = path.parent_path() / *spec.scenario.phi_file;
    }
    return spec;
}

std::vector<std::string> validate(const ExperimentSpec& spec) {
    std::vector<std::string> out;
    try {
        spec.scenario.validate();
    } catch (const std::exception& e) {
        out.push_back(std::string("scenario: ") + e.what());
    }
    if (spec.methods.empty()) {
        out.push_back("methods: need at least one");
    }
    for (std::size_t i = 0; i < spec.methods.size(); ++i) {
        const auto& m = spec.methods[i];
        if (m.name.empty()) {
            out.push_back("method " + std::to_string(i) + ": empty name");
        }
        if (m.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                     "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") !=
            std::string::npos) {
            out.push_back("method '" + m.name + "': name must be filesystem-safe");
        }
        for (std::size_t p = 0; p < i; ++p) {
            if (spec.methods[p].name == m.name) {
                out.push_back("method '" + m.name + "': duplicate name");
            }
        }
        try {
            m.config.validate();
        } catch (const std::exception& e) {
            out.push_back("method '" + m.name + "': " + e.what());
        }
        try {
            m.hyper.validate();
        } catch (const std::exception& e) {
            out.push_back("method '" + m.name + "': " + e.what());
        }
    }
    if (spec.sweep.empty()) {
        out.push_back("sweep: need at least one correlation value");
    }
    for (double k : spec.sweep) {
        for (int i = 0; i < spec.scenario.structure.num_correlated(); ++i) {
            const int d = spec.scenario.structure.block(i).size;
            const double lo = equicorrelation_lower_bound(d);
            if (!(k > lo) || !(k < 1.0)) {
                out.push_back("sweep value " + fmt(k) + " outside block " + std::to_string(i) +
                              "'s PD interval (" + fmt(lo) + ", 1)");
            }
        }
    }
    if (spec.trials < 1) {
        out.push_back("trials: must be >= 1, got " + std::to_string(spec.trials));
    }
    if (spec.jobs < 1) {
        out.push_back("jobs: must be >= 1, got " + std::to_string(spec.jobs));
    }
    return out;
}

CellOutcome run_cell(const ExperimentSpec& spec, int k_index, int method_index, int trial) {
    if (k_index < 0 || k_index >= static_cast<int>(spec.sweep.size()) || method_index < 0 ||
        method_index >= static_cast<int>(spec.methods.size()) || trial < 0 ||
        trial >= spec.trials) {
        throw IndexOutOfRange("cell coordinates outside the experiment grid");
    }
    return execute_cell(spec, k_index, method_index, trial, nullptr);
}

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
    ExperimentOutput out;
    out.diagnostics = validate(spec);
    if (!out.diagnostics.empty()) {
        out.exit_code = 2;
        return out;
    }

    const auto wall_start = std::chrono::steady_clock::now();
    const auto started_at = std::chrono::system_clock::now();

    std::filesystem::create_directories(spec.out_dir);
    const std::filesystem::path traces_dir = spec.out_dir / "traces";
    if (spec.write_traces) {
        std::filesystem::create_directories(traces_dir);
    }

    struct Task {
        int k_index;
        int method_index;
        int trial;
    };
    std::vector<Task> tasks;
    for (int ki = 0; ki < static_cast<int>(spec.sweep.size()); ++ki) {
        for (int mi = 0; mi < static_cast<int>(spec.methods.size()); ++mi) {
            for (int t = 0; t < spec.trials; ++t) {
                tasks.push_back({ki, mi, t});
            }
        }
    }
    out.cells.resize(tasks.size());

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) {
                return;
            }
            const Task& task = tasks[i];
            json report;
            out.cells[i] = execute_cell(spec, task.k_index, task.method_index, task.trial,
                                        spec.write_traces ? &report : nullptr);
            if (spec.write_traces && out.cells[i].ok) {
                const double k = spec.sweep[static_cast<std::size_t>(task.k_index)];
                const auto& name =
                    spec.methods[static_cast<std::size_t>(task.method_index)].name;
                write_text(traces_dir / trace_filename(k, name, task.trial),
                           report.dump(2) + "\n");
            }
        }
    };
    const int jobs = std::clamp(spec.jobs, 1, static_cast<int>(tasks.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int i = 0; i < jobs; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    bool any_failed = false;
    std::size_t offset = 0;
    for (std::size_t ki = 0; ki < spec.sweep.size(); ++ki) {
        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
            RowSummary row;
            row.k = spec.sweep[ki];
            row.method = spec.methods[mi].name;
            std::vector<eval::TrialResult> ok_results;
            for (int t = 0; t < spec.trials; ++t, ++offset) {
                const CellOutcome& cell = out.cells[offset];
                if (cell.ok) {
                    ok_results.push_back(cell.result);
                } else {
                    ++row.failed;
                    any_failed = true;
                }
            }
            if (!ok_results.empty()) {
                row.summary = eval::aggregate(ok_results);
            }
            out.rows.push_back(std::move(row));
        }
    }

    out.csv = render_csv(spec, out.rows);
    out.csv_path = spec.out_dir / "results.csv";
    write_text(out.csv_path, out.csv);

    json manifest;
    manifest["tool"] = {{"name", "cssbl"}, {"version", "0.1.0"}};
    manifest["environment"] = {
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                      std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"compiler", __VERSION__}};
    manifest["started_at_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(started_at.time_since_epoch())
            .count();
    manifest["spec"] = spec_to_json(spec);
    manifest["results_csv"] = out.csv_path.filename().string();
    json rows = json::array();
    for (const auto& row : out.rows) {
        rows.push_back({{"k", row.k},
                        {"method", row.method},
                        {"trials_ok", row.summary.trials},
                        {"trials_failed", row.failed},
                        {"mean_auc", row.summary.mean_auc},
                        {"sd_auc", row.summary.sd_auc},
                        {"min_auc", row.summary.min_auc},
                        {"max_auc", row.summary.max_auc},
                        {"mean_nmse", row.summary.mean_nmse},
                        {"sd_nmse", row.summary.sd_nmse},
                        {"min_nmse", row.summary.min_nmse},
                        {"max_nmse", row.summary.max_nmse},
                        {"conv_rate", row.summary.conv_rate},
                        {"mean_iterations", row.summary.mean_iterations}});
    }
    manifest["rows"] = std::move(rows);
    json cells = json::array();
    for (const auto& cell : out.cells) {
        json c{{"k", spec.sweep[static_cast<std::size_t>(cell.k_index)]},
               {"method", spec.methods[static_cast<std::size_t>(cell.method_index)].name},
               {"trial", cell.trial},
               {"data_seed", cell.data_seed},
               {"init_seed", cell.init_seed},
               {"status", cell.ok ? "ok" : "failed"}};
        if (cell.ok) {
            c["auc"] = cell.result.auc;
            c["nmse"] = cell.result.nmse;
            c["converged"] = cell.result.converged;
            c["iterations"] = cell.result.iterations;
        } else {
            c["error"] = cell.error;
        }
        if (!cell.warnings.empty()) {
            c["warnings"] = cell.warnings;
        }
        cells.push_back(std::move(c));
    }
    manifest["cells"] = std::move(cells);
    manifest["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    out.manifest_path = spec.out_dir / "manifest.json";
    write_text(out.manifest_path, manifest.dump(2) + "\n");

    out.exit_code = any_failed ? 3 : 0;
    return out;
}

int replay(const ExperimentSpec& spec, double k, const std::string& method, int trial,
           std::ostream& os) {
    const auto diagnostics = validate(spec);
    if (!diagnostics.empty()) {
        for (const auto& d : diagnostics) {
            os << "invalid spec: " << d << "\n";
        }
        return 2;
    }
    int k_index = -1;
    for (std::size_t i = 0; i < spec.sweep.size(); ++i) {
        if (spec.sweep[i] == k) {
            k_index = static_cast<int>(i);
            break;
        }
    }
    if (k_index < 0) {
        os << "k=" << fmt(k) << " is not in the sweep\n";
        return 2;
    }
    int method_index = -1;
    for (std::size_t i = 0; i < spec.methods.size(); ++i) {
        if (spec.methods[i].name == method) {
            method_index = static_cast<int>(i);
            break;
        }
    }
    if (method_index < 0) {
        os << "method '" << method << "' is not in the spec\n";
        return 2;
    }
    if (trial < 0 || trial >= spec.trials) {
        os << "trial " << trial << " outside [0, " << spec.trials << ")\n";
        return 2;
    }

    json report;
    const CellOutcome cell = execute_cell(spec, k_index, method_index, trial, &report);
    os << "cell " << coords(k, method, trial) << "\n";
    os << "data_seed=" << cell.data_seed << " init_seed=" << cell.init_seed << "\n";
    if (!cell.ok) {
        os << "status=failed\n" << cell.error << "\n";
        return 3;
    }
    os << "status=ok converged=" << (cell.result.converged ? "true" : "false")
       << " iterations=" << cell.result.iterations << "\n";
    os << "auc=" << fmt(cell.result.auc) << " nmse=" << fmt(cell.result.nmse) << "\n";
    os << "matched_permutation=";
    for (std::size_t i = 0; i < cell.result.matched_permutation.size(); ++i) {
        os << (i ? "," : "") << cell.result.matched_permutation[i];
    }
    os << "\n";
    os << "estimated_correlations=";
    const auto& corr = report.at("estimated_correlations");
    for (std::size_t i = 0; i < corr.size(); ++i) {
        os << (i ? "," : "") << fmt(corr[i].get<double>());
    }
    os << "\n";
    for (const auto& w : cell.warnings) {
        os << "warning: " << w << "\n";
    }
    if (spec.write_traces) {
        const auto traces_dir = spec.out_dir / "traces";
        std::filesystem::create_directories(traces_dir);
        const auto path = traces_dir / trace_filename(k, method, trial);
        write_text(path, report.dump(2) + "\n");
        os << "trace written to " << path.string() << "\n";
    }
    return 0;
}

} // namespace cssbl::experiment
