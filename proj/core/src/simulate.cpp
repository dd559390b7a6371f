#include "catord/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>

namespace catord {

namespace {

std::string category_name(std::size_t index) {
    return "C" + std::to_string(index + 1);
}

std::vector<double> collect_raw_p(const GroupedData& data, TestMethod method) {
    const std::size_t count = data.groups.size();
    std::vector<double> raw;
    raw.reserve(count * (count - 1) / 2);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            const auto& x = data.groups[i].values;
            const auto& y = data.groups[j].values;
            switch (method) {
                case TestMethod::mann_whitney:
                    raw.push_back(mann_whitney_one_sided(x, y).p_value);
                    break;
                case TestMethod::welch_t:
                    raw.push_back(welch_t_one_sided(x, y).p_value);
                    break;
                case TestMethod::pooled_t:
                    raw.push_back(pooled_t_one_sided(x, y).p_value);
                    break;
            }
        }
    }
    return raw;
}

DominanceNetwork network_shell(const GroupedData& data, double alpha) {
    DominanceNetwork net;
    net.alpha = alpha;
    net.nodes.reserve(data.groups.size());
    for (const auto& g : data.groups) net.nodes.push_back(g.label);
    return net;
}

void add_edges_from_flags(DominanceNetwork& net, const GroupedData& data,
                          const std::vector<bool>& dominates) {
    const std::size_t count = data.groups.size();
    std::size_t r = 0;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j, ++r) {
            if (dominates[r]) net.edges.emplace_back(j, i);
        }
    }
}

struct DecisionBundle {
    std::vector<DominanceNetwork> networks;  // aligned with requested methods
};

// Runs several decision rules over one grouped dataset, sharing the
// bootstrap replicates between the two CI-based rules.
DecisionBundle decide_all(const GroupedData& data,
                          const std::vector<DecisionMethod>& methods,
                          const AnalysisConfig& cfg, const RngStream& rng) {
    const std::size_t count = data.groups.size();
    if (count < 2) throw Error("nothing to order");
    const std::size_t n_pairs = count * (count - 1) / 2;

    bool want_bca = false;
    bool want_perc = false;
    for (DecisionMethod m : methods) {
        want_bca |= m == DecisionMethod::bca_lower;
        want_perc |= m == DecisionMethod::perc_lower;
    }

    std::vector<bool> bca_flags(n_pairs, false);
    std::vector<bool> perc_flags(n_pairs, false);
    if (want_bca || want_perc) {
        const RngStream pair_root = rng.derive(2);
        std::size_t r = 0;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i + 1; j < count; ++j, ++r) {
                const auto& x = data.groups[i].values;
                const auto& y = data.groups[j].values;
                const ReplicateSet reps =
                    bootstrap_mean_diff(x, y, cfg.reps, pair_root.derive(r));
                if (want_perc) {
                    perc_flags[r] =
                        check_lower_bound_rule(percentile_ci(reps, cfg.alpha));
                }
                if (want_bca) {
                    const auto jack = detail::jackknife_mean_diff(x, y);
                    bca_flags[r] = check_lower_bound_rule(
                        detail::bca_from_jackknife(jack, reps, cfg.alpha));
                }
            }
        }
    }

    DecisionBundle out;
    for (DecisionMethod m : methods) {
        DominanceNetwork net = network_shell(data, cfg.alpha);
        std::vector<bool> flags(n_pairs, false);
        switch (m) {
            case DecisionMethod::mann_whitney_by: {
                const auto adj = adjust_benjamini_yekutieli(
                    collect_raw_p(data, TestMethod::mann_whitney));
                for (std::size_t r = 0; r < n_pairs; ++r)
                    flags[r] = adj[r] < cfg.alpha;
                break;
            }
            case DecisionMethod::welch_t_by: {
                const auto adj = adjust_benjamini_yekutieli(
                    collect_raw_p(data, TestMethod::welch_t));
                for (std::size_t r = 0; r < n_pairs; ++r)
                    flags[r] = adj[r] < cfg.alpha;
                break;
            }
            case DecisionMethod::pooled_t: {
                const auto raw = collect_raw_p(data, TestMethod::pooled_t);
                for (std::size_t r = 0; r < n_pairs; ++r)
                    flags[r] = raw[r] < cfg.alpha;
                break;
            }
            case DecisionMethod::bca_lower: flags = bca_flags; break;
            case DecisionMethod::perc_lower: flags = perc_flags; break;
        }
        add_edges_from_flags(net, data, flags);
        out.networks.push_back(std::move(net));
    }
    return out;
}

}  // namespace

void validate(const MixtureParams& params) {
    const bool ok = params.sigma0 > 0.0 && params.gamma > 0.0 &&
                    params.l1 < params.u1 && params.p1 >= 0.0 &&
                    params.p1 <= 0.5 && std::isfinite(params.mu0) &&
                    std::isfinite(params.x0);
    if (!ok) throw Error("invalid mixture");
}

ScenarioSpec ScenarioSpec::defaults() {
    ScenarioSpec spec;
    spec.base = MixtureParams{};  // mu0 80, sigma0 16, x0 85, gamma 2
    spec.top = MixtureParams{};
    spec.top.mu0 = 140.0;
    spec.top.x0 = 145.0;
    spec.n_per_category = 100;
    return spec;
}

ScenarioSpec ScenarioSpec::with_noise(double p1) const {
    ScenarioSpec out = *this;
    out.base.p1 = p1;
    out.top.p1 = p1;
    return out;
}

std::vector<double> sample_mixture(const MixtureParams& params, std::size_t n,
                                   const RngStream& rng,
                                   std::vector<std::uint8_t>* component_tags) {
    validate(params);
    if (n < 1) throw Error("invalid mixture");

    auto engine = rng.engine();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(params.mu0, params.sigma0);

    std::vector<double> out(n);
    if (component_tags) component_tags->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = unit(engine);
        std::uint8_t tag = 0;
        double value = 0.0;
        if (u < 0.5) {
            value = gauss(engine);
            tag = 0;
        } else if (u < 1.0 - params.p1) {
            // inverse-CDF Cauchy draw
            value = params.x0 +
                    params.gamma *
                        std::tan(std::numbers::pi * (unit(engine) - 0.5));
            tag = 1;
        } else {
            value = params.l1 + (params.u1 - params.l1) * unit(engine);
            tag = 2;
        }
        out[i] = value;
        if (component_tags) (*component_tags)[i] = tag;
    }
    return out;
}

ObservationSet generate_scenario(const ScenarioSpec& spec, const RngStream& rng) {
    if (spec.n_per_category < 1) throw Error("invalid scenario: empty categories");
    validate(spec.base);
    validate(spec.top);

    ObservationSet obs;
    obs.records.reserve(5 * spec.n_per_category);
    for (std::size_t c = 0; c < 5; ++c) {
        const MixtureParams& params = c == 4 ? spec.top : spec.base;
        const std::vector<double> values =
            sample_mixture(params, spec.n_per_category, rng.derive(c));
        const std::string label = category_name(c);
        for (double v : values) obs.records.push_back({label, v});
    }
    return obs;
}

EdgeSet truth_network(const ScenarioSpec&) {
    EdgeSet truth;
    for (std::size_t c = 0; c < 5; ++c) truth.nodes.push_back(category_name(c));
    for (std::size_t c = 0; c < 4; ++c) {
        truth.edges.emplace_back("C5", category_name(c));
    }
    return truth;
}

Metrics evaluate(const DominanceNetwork& predicted, const EdgeSet& truth) {
    const std::set<std::string> predicted_nodes(predicted.nodes.begin(),
                                                predicted.nodes.end());
    const std::set<std::string> truth_nodes(truth.nodes.begin(),
                                            truth.nodes.end());
    if (predicted_nodes != truth_nodes) throw Error("node set mismatch");

    std::set<std::pair<std::string, std::string>> predicted_edges;
    for (const auto& [from, to] : predicted.edges) {
        predicted_edges.emplace(predicted.nodes[from], predicted.nodes[to]);
    }
    const std::set<std::pair<std::string, std::string>> truth_edges(
        truth.edges.begin(), truth.edges.end());

    std::size_t tp = 0;
    for (const auto& e : predicted_edges) tp += truth_edges.count(e);
    const std::size_t fp = predicted_edges.size() - tp;
    const std::size_t fn = truth_edges.size() - tp;

    Metrics m;
    m.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

std::string to_string(DecisionMethod method) {
    switch (method) {
        case DecisionMethod::mann_whitney_by: return "mann_whitney_by";
        case DecisionMethod::welch_t_by: return "welch_t_by";
        case DecisionMethod::pooled_t: return "pooled_t";
        case DecisionMethod::bca_lower: return "bca_lower";
        case DecisionMethod::perc_lower: return "perc_lower";
    }
    return "mann_whitney_by";
}

DecisionMethod decision_method_from_string(const std::string& name) {
    if (name == "mann_whitney_by") return DecisionMethod::mann_whitney_by;
    if (name == "welch_t_by") return DecisionMethod::welch_t_by;
    if (name == "pooled_t") return DecisionMethod::pooled_t;
    if (name == "bca_lower") return DecisionMethod::bca_lower;
    if (name == "perc_lower") return DecisionMethod::perc_lower;
    throw Error("unknown method: " + name);
}

std::vector<DecisionMethod> all_decision_methods() {
    return {DecisionMethod::mann_whitney_by, DecisionMethod::welch_t_by,
            DecisionMethod::pooled_t, DecisionMethod::bca_lower,
            DecisionMethod::perc_lower};
}

DominanceNetwork decide_edges(const GroupedData& data, DecisionMethod method,
                              const AnalysisConfig& cfg, const RngStream& rng) {
    validate(cfg);
    return decide_all(data, {method}, cfg, rng).networks.front();
}

BenchmarkReport run_benchmark(const std::vector<DecisionMethod>& methods,
                              const std::vector<double>& p1_grid,
                              std::size_t datasets_per_level,
                              const ScenarioSpec& spec,
                              const AnalysisConfig& cfg) {
    validate(cfg);
    if (methods.empty()) throw Error("no methods selected");
    if (p1_grid.empty()) throw Error("empty noise grid");
    if (datasets_per_level < 1) throw Error("need at least one dataset per level");

    const EdgeSet truth = truth_network(spec);
    const RngStream root{cfg.seed, 0};

    BenchmarkReport report;
    // metric sums per method across the whole grid
    std::vector<Metrics> totals(methods.size());

    for (std::size_t level = 0; level < p1_grid.size(); ++level) {
        const ScenarioSpec level_spec = spec.with_noise(p1_grid[level]);
        const RngStream level_root = root.derive(level);

        std::vector<std::vector<Metrics>> scores(
            datasets_per_level, std::vector<Metrics>(methods.size()));

#pragma omp parallel for schedule(dynamic)
        for (std::int64_t d = 0; d < static_cast<std::int64_t>(datasets_per_level); ++d) {
            const RngStream dataset_root =
                level_root.derive(static_cast<std::uint64_t>(d));
            const ObservationSet obs =
                generate_scenario(level_spec, dataset_root.derive(0));
            const GroupedData grouped = group_by_category(obs);
            const DecisionBundle bundle =
                decide_all(grouped, methods, cfg, dataset_root.derive(1));
            for (std::size_t m = 0; m < methods.size(); ++m) {
                scores[static_cast<std::size_t>(d)][m] =
                    evaluate(bundle.networks[m], truth);
            }
        }

        for (std::size_t m = 0; m < methods.size(); ++m) {
            Metrics sum;
            for (std::size_t d = 0; d < datasets_per_level; ++d) {
                sum.precision += scores[d][m].precision;
                sum.recall += scores[d][m].recall;
                sum.f1 += scores[d][m].f1;
            }
            const auto count = static_cast<double>(datasets_per_level);
            report.per_level.push_back({methods[m], p1_grid[level],
                                        sum.precision / count, sum.recall / count,
                                        sum.f1 / count});
            totals[m].precision += sum.precision;
            totals[m].recall += sum.recall;
            totals[m].f1 += sum.f1;
        }
    }

    const auto grand =
        static_cast<double>(p1_grid.size() * datasets_per_level);
    for (std::size_t m = 0; m < methods.size(); ++m) {
        report.aggregate.push_back({methods[m], std::nullopt,
                                    totals[m].precision / grand,
                                    totals[m].recall / grand,
                                    totals[m].f1 / grand});
    }
    return report;
}

BenchmarkReport timing_benchmark(const std::vector<std::size_t>& sizes,
                                 std::size_t k, std::uint64_t seed) {
    if (sizes.empty()) throw Error("no sizes given");
    if (k < 1) throw Error("replicate count must be at least 1");

    const ScenarioSpec spec = ScenarioSpec::defaults();
    const RngStream root{seed, 0};

    BenchmarkReport report;
    for (std::size_t idx = 0; idx < sizes.size(); ++idx) {
        const std::size_t n = sizes[idx];
        const RngStream size_root = root.derive(idx);
        const std::vector<double> x =
            sample_mixture(spec.base, n, size_root.derive(0));
        const std::vector<double> y =
            sample_mixture(spec.top, n, size_root.derive(1));
        const RngStream boot_stream = size_root.derive(2);

        AnalysisConfig cfg;
        cfg.reps = k;

        using clock = std::chrono::steady_clock;

        cfg.ci_method = CiMethod::percentile;
        auto t0 = clock::now();
        volatile double sink = mean_diff_ci(x, y, cfg, boot_stream).second.lower;
        auto t1 = clock::now();
        report.timings.push_back(
            {CiMethod::percentile, n,
             std::chrono::duration<double>(t1 - t0).count()});

        cfg.ci_method = CiMethod::bca;
        t0 = clock::now();
        sink = mean_diff_ci(x, y, cfg, boot_stream).second.lower;
        t1 = clock::now();
        report.timings.push_back(
            {CiMethod::bca, n, std::chrono::duration<double>(t1 - t0).count()});
        (void)sink;
    }
    return report;
}

}  // namespace catord
