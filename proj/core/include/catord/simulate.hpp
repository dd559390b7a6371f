#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catord/dominance.hpp"
#include "catord/rng.hpp"
#include "catord/types.hpp"

namespace catord {

// Three-part mixture: Normal(mu0, sigma0) with probability 0.5,
// Cauchy(x0, gamma) with probability 0.5 - p1, Uniform(l1, u1) with
// probability p1. p1 is the uniform-noise level.
struct MixtureParams {
    double mu0 = 80.0;
    double sigma0 = 16.0;
    double x0 = 85.0;
    double gamma = 2.0;
    double l1 = -400.0;
    double u1 = 400.0;
    double p1 = 0.01;
};

void validate(const MixtureParams& params);

// Five categories C1..C5 where C1..C4 share `base` and C5 uses `top`
// (same shape shifted up), so the ground truth is C5 dominating the rest.
struct ScenarioSpec {
    MixtureParams base;
    MixtureParams top;
    std::size_t n_per_category = 100;

    static ScenarioSpec defaults();
    ScenarioSpec with_noise(double p1) const;
};

std::vector<double> sample_mixture(const MixtureParams& params, std::size_t n,
                                   const RngStream& rng,
                                   std::vector<std::uint8_t>* component_tags = nullptr);

ObservationSet generate_scenario(const ScenarioSpec& spec, const RngStream& rng);

struct EdgeSet {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;  // dominator -> dominated
};

EdgeSet truth_network(const ScenarioSpec& spec);

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Directed-edge TP/FP/FN against the truth. An empty prediction scores
// (0, 0, 0) so aggregates stay well-defined.
Metrics evaluate(const DominanceNetwork& predicted, const EdgeSet& truth);

enum class DecisionMethod {
    mann_whitney_by,
    welch_t_by,
    pooled_t,
    bca_lower,
    perc_lower,
};

std::string to_string(DecisionMethod method);
DecisionMethod decision_method_from_string(const std::string& name);
std::vector<DecisionMethod> all_decision_methods();

// Edge set produced by one decision rule over sorted groups. The *_by
// methods threshold Benjamini-Yekutieli-adjusted p-values at alpha,
// pooled_t thresholds raw p-values, and the *_lower methods apply the
// CI lower-bound rule to bootstrap mean-difference intervals.
DominanceNetwork decide_edges(const GroupedData& data, DecisionMethod method,
                              const AnalysisConfig& cfg, const RngStream& rng);

struct AccuracyRow {
    DecisionMethod method = DecisionMethod::mann_whitney_by;
    std::optional<double> p1;  // nullopt marks the aggregate over the grid
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct TimingRow {
    CiMethod method = CiMethod::percentile;
    std::size_t n = 0;
    double seconds = 0.0;
};

struct BenchmarkReport {
    std::vector<AccuracyRow> per_level;
    std::vector<AccuracyRow> aggregate;
    std::vector<TimingRow> timings;
};

// Noise-sensitivity study: datasets_per_level scenarios per p1 level, each
// scored independently per method against the truth network, then averaged
// per level and over the whole grid. Datasets run in parallel with derived
// seeds, so the report is a deterministic function of cfg.seed.
BenchmarkReport run_benchmark(const std::vector<DecisionMethod>& methods,
                              const std::vector<double>& p1_grid,
                              std::size_t datasets_per_level,
                              const ScenarioSpec& spec,
                              const AnalysisConfig& cfg);

// Wall-clock comparison of percentile vs BCa mean-difference intervals on
// two mixture-sampled groups of each size, same replicate draws for both.
BenchmarkReport timing_benchmark(const std::vector<std::size_t>& sizes,
                                 std::size_t k, std::uint64_t seed = 0);

}  // namespace catord
