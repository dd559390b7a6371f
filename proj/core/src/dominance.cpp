#include "catord/dominance.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>

namespace catord {

namespace {

// Substream tags: one family for per-category mean CIs, one for pair work.
// Pairs are numbered by their linear rank in (i, j) order so every pair gets
// the same stream no matter how the loop is scheduled.
constexpr std::uint64_t kMeanStreams = 1;
constexpr std::uint64_t kPairStreams = 2;

}  // namespace

bool check_lower_bound_rule(const ConfidenceInterval& diff_ci) {
    return diff_ci.lower > 0.0;
}

double network_density(const DominanceNetwork& net) {
    const std::size_t n = net.nodes.size();
    if (n < 2) throw Error("undefined density");
    const double max_edges = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(net.edges.size()) / max_edges;
}

std::vector<std::string> dominated_set(const DominanceNetwork& net,
                                       const std::string& node) {
    const auto it = std::find(net.nodes.begin(), net.nodes.end(), node);
    if (it == net.nodes.end()) throw Error("unknown category: " + node);
    const auto start = static_cast<std::size_t>(it - net.nodes.begin());

    std::vector<std::vector<std::size_t>> adjacency(net.nodes.size());
    for (const auto& [from, to] : net.edges) adjacency[from].push_back(to);

    std::set<std::size_t> seen;
    std::deque<std::size_t> frontier{start};
    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        for (std::size_t next : adjacency[cur]) {
            if (next != start && seen.insert(next).second) frontier.push_back(next);
        }
    }

    std::vector<std::string> out;
    out.reserve(seen.size());
    for (std::size_t idx : seen) out.push_back(net.nodes[idx]);
    std::sort(out.begin(), out.end());
    return out;
}

DominanceResult infer_dominance(const GroupedData& data,
                                const AnalysisConfig& cfg) {
    validate(cfg);
    const std::size_t count = data.groups.size();
    if (count < 2) throw Error("nothing to order");

    DominanceResult result;
    result.order.reserve(count);
    for (const auto& g : data.groups) {
        if (g.values.empty()) throw Error("empty group: " + g.label);
        result.order.push_back(g.label);
        result.means.push_back(g.mean);
        result.sizes.push_back(g.values.size());
    }

    const RngStream root{cfg.seed, 0};
    const RngStream mean_root = root.derive(kMeanStreams);
    const RngStream pair_root = root.derive(kPairStreams);

    result.mean_cis.resize(count);
    for (std::size_t c = 0; c < count; ++c) {
        result.mean_cis[c] =
            mean_ci(data.groups[c].values, cfg, mean_root.derive(c)).second;
    }

    const std::size_t n_pairs = count * (count - 1) / 2;
    result.pairs.resize(n_pairs);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(n_pairs); ++r) {
        // invert the linear rank back to (i, j)
        std::size_t i = 0;
        std::size_t rest = static_cast<std::size_t>(r);
        while (rest >= count - i - 1) {
            rest -= count - i - 1;
            ++i;
        }
        const std::size_t j = i + 1 + rest;

        PairSummary pair;
        pair.low = i;
        pair.high = j;
        pair.diff_ci = mean_diff_ci(data.groups[i].values, data.groups[j].values,
                                    cfg, pair_root.derive(static_cast<std::uint64_t>(r)))
                           .second;
        pair.p_raw =
            mann_whitney_one_sided(data.groups[i].values, data.groups[j].values)
                .p_value;
        result.pairs[static_cast<std::size_t>(r)] = std::move(pair);
    }

    std::vector<double> raw(n_pairs);
    for (std::size_t r = 0; r < n_pairs; ++r) raw[r] = result.pairs[r].p_raw;
    const std::vector<double> adjusted = adjust_benjamini_yekutieli(raw);

    result.network.alpha = cfg.alpha;
    result.network.nodes = result.order;
    for (std::size_t r = 0; r < n_pairs; ++r) {
        result.pairs[r].p_adjusted = adjusted[r];
        result.pairs[r].dominates = adjusted[r] < cfg.alpha;
        if (result.pairs[r].dominates) {
            result.network.edges.emplace_back(result.pairs[r].high,
                                              result.pairs[r].low);
        }
    }
    result.density = network_density(result.network);
    return result;
}

}  // namespace catord
