#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "catord/resample.hpp"
#include "catord/rng.hpp"
#include "catord/stat_tests.hpp"
#include "catord/types.hpp"

namespace catord {

// Directed graph of "dominates" relations. Edges run from the dominating
// category to the dominated one and only ever point from a higher-sorted
// mean to a lower-sorted one, so the graph is acyclic by construction.
struct DominanceNetwork {
    std::vector<std::string> nodes;  // ascending sample mean
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    double alpha = 0.05;
};

struct PairSummary {
    std::size_t low = 0;   // index of the lower-mean category in the order
    std::size_t high = 0;  // index of the higher-mean category
    ConfidenceInterval diff_ci;  // mean(high) - mean(low)
    double p_raw = 1.0;
    double p_adjusted = 1.0;
    bool dominates = false;
};

struct DominanceResult {
    std::vector<std::string> order;  // categories ascending by sample mean
    std::vector<double> means;
    std::vector<std::size_t> sizes;
    std::vector<ConfidenceInterval> mean_cis;
    std::vector<PairSummary> pairs;  // all C(n,2) pairs in (low, high) order
    DominanceNetwork network;
    double density = 0.0;
};

// Full pipeline over grouped data: per-category mean CIs, per-pair
// mean-difference CIs and Mann-Whitney p-values, Benjamini-Yekutieli
// adjustment over all pairs, then an edge high -> low wherever the adjusted
// p-value is below alpha.
DominanceResult infer_dominance(const GroupedData& data,
                                const AnalysisConfig& cfg);

// Decision rule used by the bootstrap baselines: dominance iff the interval
// sits strictly above zero.
bool check_lower_bound_rule(const ConfidenceInterval& diff_ci);

// |E| / C(n,2): realized edges over the maximum a mean-sorted DAG can hold.
double network_density(const DominanceNetwork& net);

// Categories reachable by directed paths from `node`, sorted by label.
std::vector<std::string> dominated_set(const DominanceNetwork& net,
                                       const std::string& node);

}  // namespace catord
