// catord: infer which categories dominate which from (category, value) data.
//
// Subcommands:
//   analyze    run the full pipeline over a CSV and export JSON/DOT/CSV
//   simulate   draw a synthetic five-category mixture dataset
//   benchmark  accuracy (noise grid) or timing (percentile vs BCa) studies
//
// Exit codes: 0 ok, 1 usage error, 2 data error, 3 internal error.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catord/dominance.hpp"
#include "catord/io.hpp"
#include "catord/simulate.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnalyzeOptions {
    std::string input;
    double alpha = 0.05;
    std::size_t reps = 1000;
    std::string ci = "percentile";
    std::uint64_t seed = 0;
    std::string out_json;
    std::string out_dot;
    std::string out_ci_table;
};

struct SimulateOptions {
    double p1 = 0.01;
    std::size_t n = 100;
    std::uint64_t seed = 0;
    std::string out;
};

struct BenchmarkOptions {
    std::string mode;
    std::vector<std::string> methods;
    std::vector<double> p1_grid;
    std::size_t datasets = 100;
    std::size_t n_per_cat = 100;
    std::vector<std::size_t> sizes;
    std::optional<std::size_t> reps;
    std::uint64_t seed = 0;
    std::string out;
    std::string out_json;
    bool sizes_given = false;
    bool accuracy_flags_given = false;  // methods/p1-grid/datasets/n-per-cat
};

int run_analyze(const AnalyzeOptions& opt) {
    catord::AnalysisConfig cfg;
    cfg.alpha = opt.alpha;
    cfg.reps = opt.reps;
    cfg.ci_method = catord::ci_method_from_string(opt.ci);
    cfg.seed = opt.seed;
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        throw UsageError("--alpha must be in (0,1)");
    }
    if (cfg.reps < 1) throw UsageError("--reps must be at least 1");

    const catord::ObservationSet obs = catord::parse_csv(opt.input);
    const catord::GroupedData grouped = catord::group_by_category(obs);
    const catord::DominanceResult result = catord::infer_dominance(grouped, cfg);

    if (!opt.out_json.empty()) {
        catord::write_text_file(opt.out_json,
                                catord::analyze_to_json(result, cfg));
    }
    if (!opt.out_dot.empty()) {
        catord::write_text_file(opt.out_dot, catord::dominance_to_dot(result));
    }
    if (!opt.out_ci_table.empty()) {
        catord::write_text_file(opt.out_ci_table, catord::ci_table_csv(result));
    }

    std::cout << "categories (ascending mean):";
    for (const auto& label : result.order) std::cout << ' ' << label;
    std::cout << "\nedges: " << result.network.edges.size()
              << "\ndensity: " << result.density << '\n';
    return 0;
}

int run_simulate(const SimulateOptions& opt) {
    if (opt.p1 < 0.0 || opt.p1 > 0.5) {
        throw UsageError("--p1 must be in [0, 0.5]");
    }
    if (opt.n < 1) throw UsageError("--n must be at least 1");
    if (opt.out.empty()) throw UsageError("--out is required");

    catord::ScenarioSpec spec = catord::ScenarioSpec::defaults().with_noise(opt.p1);
    spec.n_per_category = opt.n;
    const catord::ObservationSet obs =
        catord::generate_scenario(spec, catord::RngStream{opt.seed, 0});
    catord::write_text_file(opt.out, catord::observations_to_csv(obs));
    std::cout << "wrote " << obs.records.size() << " rows to " << opt.out << '\n';
    return 0;
}

int run_benchmark(const BenchmarkOptions& opt) {
    catord::BenchmarkReport report;

    if (opt.mode == "accuracy") {
        if (opt.sizes_given) {
            throw UsageError("--sizes only applies to --mode timing");
        }
        std::vector<catord::DecisionMethod> methods;
        if (opt.methods.empty()) {
            methods = catord::all_decision_methods();
        } else {
            for (const auto& name : opt.methods) {
                methods.push_back(catord::decision_method_from_string(name));
            }
        }
        std::vector<double> grid = opt.p1_grid;
        if (grid.empty()) {
            grid = {0.01, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
        }
        for (double p1 : grid) {
            if (p1 < 0.0 || p1 > 0.5) {
                throw UsageError("--p1-grid entries must be in [0, 0.5]");
            }
        }

        catord::ScenarioSpec spec = catord::ScenarioSpec::defaults();
        spec.n_per_category = opt.n_per_cat;
        catord::AnalysisConfig cfg;
        cfg.reps = opt.reps.value_or(1000);
        cfg.seed = opt.seed;

        report = catord::run_benchmark(methods, grid, opt.datasets, spec, cfg);
        if (!opt.out.empty()) {
            catord::write_text_file(opt.out, catord::accuracy_report_csv(report));
        }
        for (const auto& row : report.aggregate) {
            std::cout << to_string(row.method) << ": f1=" << row.f1
                      << " precision=" << row.precision
                      << " recall=" << row.recall << '\n';
        }
    } else if (opt.mode == "timing") {
        if (opt.accuracy_flags_given) {
            throw UsageError(
                "--methods/--p1-grid/--datasets/--n-per-cat only apply to "
                "--mode accuracy");
        }
        std::vector<std::size_t> sizes = opt.sizes;
        if (sizes.empty()) sizes = {1000, 10000};
        report = catord::timing_benchmark(sizes, opt.reps.value_or(4000), opt.seed);
        if (!opt.out.empty()) {
            catord::write_text_file(opt.out, catord::timing_report_csv(report));
        }
        for (const auto& row : report.timings) {
            std::cout << to_string(row.method) << " n=" << row.n << ": "
                      << row.seconds << " s\n";
        }
    } else {
        throw UsageError("--mode must be accuracy or timing");
    }

    if (!opt.out_json.empty()) {
        catord::write_text_file(opt.out_json, catord::report_to_json(report));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonparametric ordering inference over (category, value) data"};
    app.require_subcommand(1);

    AnalyzeOptions analyze_opt;
    auto* analyze = app.add_subcommand(
        "analyze", "Infer the dominance order and intervals from a CSV");
    analyze->add_option("--input", analyze_opt.input, "Input CSV (category,value)")
        ->required();
    analyze->add_option("--alpha", analyze_opt.alpha, "Significance level");
    analyze->add_option("--reps", analyze_opt.reps, "Bootstrap replicates");
    analyze->add_option("--ci", analyze_opt.ci, "CI method")
        ->check(CLI::IsMember({"percentile", "bca", "normal"}));
    analyze->add_option("--seed", analyze_opt.seed, "RNG seed");
    analyze->add_option("--out", analyze_opt.out_json, "JSON result path");
    analyze->add_option("--dot", analyze_opt.out_dot, "Graphviz DOT path");
    analyze->add_option("--ci-table", analyze_opt.out_ci_table,
                        "Per-category CI ladder CSV path");

    SimulateOptions simulate_opt;
    auto* simulate = app.add_subcommand(
        "simulate", "Draw a synthetic five-category mixture dataset");
    simulate->add_option("--p1", simulate_opt.p1, "Uniform-noise level in [0, 0.5]");
    simulate->add_option("--n", simulate_opt.n, "Observations per category");
    simulate->add_option("--seed", simulate_opt.seed, "RNG seed");
    simulate->add_option("--out", simulate_opt.out, "Output CSV path")->required();

    BenchmarkOptions bench_opt;
    auto* bench = app.add_subcommand("benchmark",
                                     "Accuracy or timing study over scenarios");
    bench->add_option("--mode", bench_opt.mode, "accuracy or timing")->required();
    bench->add_option("--methods", bench_opt.methods,
                      "Decision methods (accuracy mode)")
        ->delimiter(',');
    bench->add_option("--p1-grid", bench_opt.p1_grid, "Noise levels (accuracy mode)")
        ->delimiter(',');
    bench->add_option("--datasets", bench_opt.datasets, "Datasets per noise level");
    bench->add_option("--n-per-cat", bench_opt.n_per_cat,
                      "Observations per category (accuracy mode)");
    bench->add_option("--sizes", bench_opt.sizes, "Group sizes (timing mode)")
        ->delimiter(',');
    bench->add_option("--reps", bench_opt.reps,
                      "Bootstrap replicates (default 1000 accuracy, 4000 timing)");
    bench->add_option("--seed", bench_opt.seed, "RNG seed");
    bench->add_option("--out", bench_opt.out, "Report CSV path");
    bench->add_option("--json", bench_opt.out_json, "Report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_opt);
        if (simulate->parsed()) return run_simulate(simulate_opt);
        if (bench->parsed()) {
            bench_opt.sizes_given = bench->count("--sizes") > 0;
            bench_opt.accuracy_flags_given = bench->count("--methods") > 0 ||
                                             bench->count("--p1-grid") > 0 ||
                                             bench->count("--datasets") > 0 ||
                                             bench->count("--n-per-cat") > 0;
            return run_benchmark(bench_opt);
        }
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const catord::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
