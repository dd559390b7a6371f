#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "catord/dominance.hpp"

using namespace catord;

namespace {

GroupedData grouped_from(std::map<std::string, std::vector<double>> data) {
    ObservationSet obs;
    for (const auto& [label, values] : data) {
        for (double v : values) obs.records.push_back({label, v});
    }
    return group_by_category(obs);
}

std::vector<double> gaussian(std::size_t n, double mean, double sd, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(mean, sd);
    std::vector<double> out(n);
    for (auto& v : out) v = gauss(rng);
    return out;
}

// Kahn's algorithm; true when a topological order exists.
bool is_acyclic(const DominanceNetwork& net) {
    std::vector<std::size_t> indegree(net.nodes.size(), 0);
    for (const auto& [from, to] : net.edges) ++indegree[to];
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < indegree.size(); ++i) {
        if (indegree[i] == 0) queue.push_back(i);
    }
    std::size_t seen = 0;
    while (!queue.empty()) {
        const std::size_t cur = queue.back();
        queue.pop_back();
        ++seen;
        for (const auto& [from, to] : net.edges) {
            if (from == cur && --indegree[to] == 0) queue.push_back(to);
        }
    }
    return seen == net.nodes.size();
}

}  // namespace

TEST_CASE("lower-bound decision rule is strict") {
    ConfidenceInterval ci;
    ci.lower = 0.5;
    ci.upper = 2.0;
    CHECK(check_lower_bound_rule(ci));
    ci.lower = -0.1;
    CHECK_FALSE(check_lower_bound_rule(ci));
    ci.lower = 0.0;
    ci.upper = 1.0;
    CHECK_FALSE(check_lower_bound_rule(ci));
}

TEST_CASE("network density over the mean-sorted maximum") {
    DominanceNetwork net;
    net.nodes = {"C1", "C2", "C3", "C4", "C5"};
    CHECK(network_density(net) == 0.0);

    for (std::size_t i = 0; i < 4; ++i) net.edges.emplace_back(4, i);
    CHECK(network_density(net) == doctest::Approx(0.4));

    DominanceNetwork chain;
    chain.nodes = {"a", "b", "c"};
    chain.edges = {{2, 1}, {1, 0}, {2, 0}};
    CHECK(network_density(chain) == doctest::Approx(1.0));

    DominanceNetwork lonely;
    lonely.nodes = {"only"};
    CHECK_THROWS_WITH_AS(network_density(lonely), "undefined density", Error);
}

TEST_CASE("dominated set is directed reachability") {
    DominanceNetwork net;
    net.nodes = {"A", "B", "C", "D"};
    net.edges = {{0, 1}, {1, 2}};  // A -> B -> C, D isolated

    CHECK(dominated_set(net, "D").empty());
    CHECK(dominated_set(net, "A") == std::vector<std::string>{"B", "C"});
    CHECK(dominated_set(net, "B") == std::vector<std::string>{"C"});
    CHECK_THROWS_WITH_AS(dominated_set(net, "Z"), "unknown category: Z", Error);
}

TEST_CASE("dominated set on the five-category truth layout") {
    DominanceNetwork net;
    net.nodes = {"C1", "C2", "C3", "C4", "C5"};
    for (std::size_t i = 0; i < 4; ++i) net.edges.emplace_back(4, i);

    CHECK(dominated_set(net, "C5") ==
          std::vector<std::string>{"C1", "C2", "C3", "C4"});
    CHECK(dominated_set(net, "C1").empty());
}

TEST_CASE("infer_dominance on two well-separated groups") {
    const auto grouped = grouped_from({
        {"low", gaussian(100, 0.0, 1.0, 11)},
        {"high", gaussian(100, 10.0, 1.0, 22)},
    });
    AnalysisConfig cfg;
    cfg.seed = 31337;
    const auto result = infer_dominance(grouped, cfg);

    CHECK(result.order == std::vector<std::string>{"low", "high"});
    REQUIRE(result.network.edges.size() == 1);
    CHECK(result.network.edges[0] == std::pair<std::size_t, std::size_t>{1, 0});
    REQUIRE(result.pairs.size() == 1);
    CHECK(result.pairs[0].p_adjusted < 1e-10);
    CHECK(result.pairs[0].dominates);
    CHECK(result.pairs[0].diff_ci.point_estimate > 9.0);
    CHECK(result.pairs[0].diff_ci.point_estimate < 11.0);
    CHECK(result.density == doctest::Approx(1.0));
    CHECK(result.mean_cis.size() == 2);
}

TEST_CASE("identical groups produce no edges") {
    const auto values = gaussian(80, 3.0, 2.0, 5);
    const auto grouped = grouped_from({{"a", values}, {"b", values}});
    AnalysisConfig cfg;
    cfg.seed = 7;
    const auto result = infer_dominance(grouped, cfg);
    CHECK(result.network.edges.empty());
    CHECK(result.density == 0.0);
}

TEST_CASE("infer_dominance input validation") {
    AnalysisConfig cfg;
    const auto single = grouped_from({{"only", {1.0, 2.0}}});
    CHECK_THROWS_WITH_AS(infer_dominance(single, cfg), "nothing to order", Error);

    GroupedData holey = grouped_from({{"a", {1.0}}, {"b", {2.0}}});
    holey.groups[0].values.clear();
    CHECK_THROWS_WITH_AS(infer_dominance(holey, cfg), "empty group: a", Error);

    cfg.alpha = 0.0;
    const auto two = grouped_from({{"a", {1.0, 2.0}}, {"b", {3.0, 4.0}}});
    CHECK_THROWS_AS(infer_dominance(two, cfg), Error);
}

TEST_CASE("outputs are acyclic, irreflexive, antisymmetric") {
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> n_groups(2, 6);
    std::uniform_real_distribution<double> center(-5.0, 5.0);
    std::uniform_real_distribution<double> spread(0.5, 4.0);

    AnalysisConfig cfg;
    cfg.reps = 200;
    for (int rep = 0; rep < 20; ++rep) {
        std::map<std::string, std::vector<double>> data;
        const int groups = n_groups(rng);
        for (int g = 0; g < groups; ++g) {
            data["g" + std::to_string(g)] =
                gaussian(40, center(rng), spread(rng), rng());
        }
        cfg.seed = rng();
        const auto result = infer_dominance(grouped_from(data), cfg);

        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& [from, to] : result.network.edges) {
            CHECK(from != to);                       // irreflexive
            CHECK(from > to);                        // only higher-mean -> lower-mean
            CHECK_FALSE(seen.count({to, from}));     // antisymmetric
            CHECK(seen.insert({from, to}).second);   // no duplicate edges
        }
        CHECK(is_acyclic(result.network));

        // edge iff adjusted p below alpha
        for (const auto& pair : result.pairs) {
            const bool has_edge = seen.count({pair.high, pair.low}) > 0;
            CHECK(has_edge == (pair.p_adjusted < cfg.alpha));
        }
    }
}

TEST_CASE("edge direction follows the higher mean for shifted copies") {
    // two shifted copies of one symmetric sample
    const auto base = gaussian(50, 0.0, 1.0, 1234);
    for (int rep = 0; rep < 10; ++rep) {
        auto shifted = base;
        for (auto& v : shifted) v += 5.0;
        const auto grouped = grouped_from({{"base", base}, {"up", shifted}});
        AnalysisConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(rep);
        const auto result = infer_dominance(grouped, cfg);
        REQUIRE(result.network.edges.size() == 1);
        CHECK(result.order[result.network.edges[0].first] == "up");
        CHECK(result.order[result.network.edges[0].second] == "base");
    }
}

TEST_CASE("edge set is invariant under relabeling and positive rescaling") {
    std::map<std::string, std::vector<double>> data{
        {"a", gaussian(60, 0.0, 1.0, 1)},
        {"b", gaussian(60, 1.0, 1.0, 2)},
        {"c", gaussian(60, 6.0, 1.0, 3)},
    };
    AnalysisConfig cfg;
    cfg.seed = 99;
    const auto base = infer_dominance(grouped_from(data), cfg);

    const std::map<std::string, std::string> rename{
        {"a", "zebra"}, {"b", "yak"}, {"c", "xerus"}};
    std::map<std::string, std::vector<double>> scaled;
    for (auto& [label, values] : data) {
        auto v = values;
        for (auto& x : v) x *= 2.5;
        scaled[rename.at(label)] = std::move(v);
    }
    const auto transformed = infer_dominance(grouped_from(scaled), cfg);

    const auto edge_labels = [](const DominanceResult& r) {
        std::set<std::pair<std::string, std::string>> out;
        for (const auto& [from, to] : r.network.edges) {
            out.emplace(r.order[from], r.order[to]);
        }
        return out;
    };
    std::set<std::pair<std::string, std::string>> mapped;
    for (const auto& [from, to] : edge_labels(base)) {
        mapped.emplace(rename.at(from), rename.at(to));
    }
    CHECK(mapped == edge_labels(transformed));
    CHECK(base.density == doctest::Approx(transformed.density));
}

TEST_CASE("result is deterministic for a fixed seed") {
    const auto grouped = grouped_from({
        {"a", gaussian(30, 0.0, 1.0, 8)},
        {"b", gaussian(30, 0.5, 1.0, 9)},
    });
    AnalysisConfig cfg;
    cfg.seed = 2222;
    const auto r1 = infer_dominance(grouped, cfg);
    const auto r2 = infer_dominance(grouped, cfg);
    CHECK(r1.pairs[0].diff_ci.lower == r2.pairs[0].diff_ci.lower);
    CHECK(r1.pairs[0].diff_ci.upper == r2.pairs[0].diff_ci.upper);
    CHECK(r1.mean_cis[0].lower == r2.mean_cis[0].lower);
    CHECK(r1.pairs[0].p_raw == r2.pairs[0].p_raw);
}
