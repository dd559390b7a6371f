#include <doctest.h>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>

#include "catord/io.hpp"

using namespace catord;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("catord_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path write_file(const TempDir& dir, const std::string& name,
                    const std::string& text) {
    const fs::path p = dir.path / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

DominanceResult sample_result(const AnalysisConfig& cfg) {
    ObservationSet obs;
    std::mt19937 rng(321);
    std::normal_distribution<double> lo(0.0, 1.0);
    std::normal_distribution<double> mid(2.0, 1.0);
    std::normal_distribution<double> hi(8.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        obs.records.push_back({"low", lo(rng)});
        obs.records.push_back({"mid", mid(rng)});
        obs.records.push_back({"high", hi(rng)});
    }
    return infer_dominance(group_by_category(obs), cfg);
}

// Checks the subset of DOT this project emits: a digraph with quoted node
// statements (optional [label="..."]) and quoted edge statements.
bool dot_is_valid(const std::string& text) {
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    const auto literal = [&](const std::string& word) {
        skip_ws();
        if (text.compare(pos, word.size(), word) != 0) return false;
        pos += word.size();
        return true;
    };
    const auto quoted = [&] {
        skip_ws();
        if (pos >= text.size() || text[pos] != '"') return false;
        ++pos;
        while (pos < text.size() && text[pos] != '"') {
            pos += text[pos] == '\\' ? 2 : 1;
        }
        if (pos >= text.size()) return false;
        ++pos;
        return true;
    };

    if (!literal("digraph")) return false;
    skip_ws();
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (!literal("{")) return false;
    while (true) {
        skip_ws();
        if (pos < text.size() && text[pos] == '}') {
            ++pos;
            break;
        }
        if (!quoted()) return false;
        skip_ws();
        if (text.compare(pos, 2, "->") == 0) {
            pos += 2;
            if (!quoted()) return false;
        } else if (pos < text.size() && text[pos] == '[') {
            ++pos;
            if (!literal("label") || !literal("=") || !quoted()) return false;
            skip_ws();
            if (pos >= text.size() || text[pos] != ']') return false;
            ++pos;
        }
        if (!literal(";")) return false;
    }
    skip_ws();
    return pos == text.size();
}

}  // namespace

TEST_CASE("parse_csv happy path") {
    TempDir dir;
    const auto p = write_file(dir, "ok.csv", "category,value\nA,1.5\nB,2.0\n");
    const auto obs = parse_csv(p);
    REQUIRE(obs.records.size() == 2);
    CHECK(obs.records[0].category == "A");
    CHECK(obs.records[0].value == 1.5);
    CHECK(obs.records[1].category == "B");
    CHECK(obs.records[1].value == 2.0);
}

TEST_CASE("parse_csv tolerates blank lines and windows endings") {
    TempDir dir;
    const auto p = write_file(dir, "crlf.csv",
                              "category,value\r\nA, 1.5\r\n\r\nB,-2e3\r\n");
    const auto obs = parse_csv(p);
    REQUIRE(obs.records.size() == 2);
    CHECK(obs.records[1].value == -2000.0);
}

TEST_CASE("parse_csv error contract") {
    TempDir dir;
    CHECK_THROWS_AS(parse_csv(dir.path / "missing.csv"), Error);

    const auto empty = write_file(dir, "empty.csv", "");
    CHECK_THROWS_WITH_AS(parse_csv(empty), "empty dataset", Error);

    const auto header_only = write_file(dir, "header.csv", "category,value\n");
    CHECK_THROWS_WITH_AS(parse_csv(header_only), "empty dataset", Error);

    const auto bad_header = write_file(dir, "bad.csv", "cat,val\nA,1\n");
    CHECK_THROWS_WITH_AS(parse_csv(bad_header), "bad header", Error);

    const auto bad_value =
        write_file(dir, "badval.csv", "category,value\nA,1\nB,2\nC,abc\n");
    CHECK_THROWS_WITH_AS(parse_csv(bad_value), "parse error at line 4", Error);

    const auto no_comma = write_file(dir, "nocomma.csv", "category,value\nA1\n");
    CHECK_THROWS_WITH_AS(parse_csv(no_comma), "parse error at line 2", Error);

    const auto inf_value = write_file(dir, "inf.csv", "category,value\nA,inf\n");
    CHECK_THROWS_WITH_AS(parse_csv(inf_value), "invalid value at line 2", Error);
}

TEST_CASE("observations csv round-trips at 15 significant digits") {
    ObservationSet obs;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> val(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        obs.records.push_back({"g" + std::to_string(i % 7), val(rng)});
    }

    TempDir dir;
    const auto p = write_file(dir, "round.csv", observations_to_csv(obs));
    const auto back = parse_csv(p);
    REQUIRE(back.records.size() == obs.records.size());
    for (std::size_t i = 0; i < obs.records.size(); ++i) {
        CHECK(back.records[i].category == obs.records[i].category);
        CHECK(back.records[i].value ==
              doctest::Approx(obs.records[i].value).epsilon(1e-14));
    }
}

TEST_CASE("analysis json round-trips bit-exactly") {
    AnalysisConfig cfg;
    cfg.seed = 424242;
    cfg.reps = 300;
    const auto result = sample_result(cfg);

    const std::string text = analyze_to_json(result, cfg);
    const AnalyzeDocument doc = analyze_from_json(text);

    CHECK(doc.config.alpha == cfg.alpha);
    CHECK(doc.config.reps == cfg.reps);
    CHECK(doc.config.seed == cfg.seed);
    CHECK(doc.config.ci_method == cfg.ci_method);

    REQUIRE(doc.result.order == result.order);
    REQUIRE(doc.result.pairs.size() == result.pairs.size());
    for (std::size_t i = 0; i < result.order.size(); ++i) {
        CHECK(doc.result.means[i] == result.means[i]);
        CHECK(doc.result.sizes[i] == result.sizes[i]);
        CHECK(doc.result.mean_cis[i].lower == result.mean_cis[i].lower);
        CHECK(doc.result.mean_cis[i].upper == result.mean_cis[i].upper);
        CHECK(doc.result.mean_cis[i].level == result.mean_cis[i].level);
        CHECK(doc.result.mean_cis[i].point_estimate ==
              result.mean_cis[i].point_estimate);
    }
    for (std::size_t i = 0; i < result.pairs.size(); ++i) {
        CHECK(doc.result.pairs[i].low == result.pairs[i].low);
        CHECK(doc.result.pairs[i].high == result.pairs[i].high);
        CHECK(doc.result.pairs[i].p_raw == result.pairs[i].p_raw);
        CHECK(doc.result.pairs[i].p_adjusted == result.pairs[i].p_adjusted);
        CHECK(doc.result.pairs[i].dominates == result.pairs[i].dominates);
        CHECK(doc.result.pairs[i].diff_ci.lower == result.pairs[i].diff_ci.lower);
        CHECK(doc.result.pairs[i].diff_ci.upper == result.pairs[i].diff_ci.upper);
    }
    CHECK(doc.result.network.edges == result.network.edges);
    CHECK(doc.result.density == result.density);

    // serialization is stable: dumping the parsed document reproduces the text
    CHECK(analyze_to_json(doc.result, doc.config) == text);
}

TEST_CASE("dot export is well-formed and mirrors the edge list") {
    AnalysisConfig cfg;
    cfg.seed = 3;
    cfg.reps = 200;
    const auto result = sample_result(cfg);

    const std::string dot = dominance_to_dot(result);
    CHECK(dot.rfind("digraph dominance {", 0) == 0);
    CHECK(dot_is_valid(dot));

    // edge-for-edge parity with the json edge list
    std::set<std::pair<std::string, std::string>> json_edges;
    for (const auto& [from, to] : result.network.edges) {
        json_edges.emplace(result.network.nodes[from], result.network.nodes[to]);
    }
    std::set<std::pair<std::string, std::string>> dot_edges;
    std::size_t pos = 0;
    while ((pos = dot.find("->", pos)) != std::string::npos) {
        const auto lq = dot.rfind('"', dot.rfind('"', pos) - 1);
        const auto from = dot.substr(lq + 1, dot.rfind('"', pos) - lq - 1);
        const auto rq1 = dot.find('"', pos);
        const auto rq2 = dot.find('"', rq1 + 1);
        dot_edges.emplace(from, dot.substr(rq1 + 1, rq2 - rq1 - 1));
        pos = rq2;
    }
    CHECK(dot_edges == json_edges);
}

TEST_CASE("dot escapes quotes in labels") {
    DominanceResult result;
    result.order = {"a\"b", "plain"};
    result.means = {1.0, 2.0};
    result.sizes = {3, 3};
    result.network.nodes = result.order;
    result.network.edges = {{1, 0}};
    const std::string dot = dominance_to_dot(result);
    CHECK(dot.find("\"a\\\"b\"") != std::string::npos);
    CHECK(dot_is_valid(dot));
}

TEST_CASE("ci table lists categories in mean order") {
    AnalysisConfig cfg;
    cfg.seed = 12;
    cfg.reps = 200;
    const auto result = sample_result(cfg);
    const std::string csv = ci_table_csv(result);

    CHECK(csv.rfind("rank,category,n,mean,lower,upper,level,method\n", 0) == 0);
    const auto low_pos = csv.find(",low,");
    const auto mid_pos = csv.find(",mid,");
    const auto high_pos = csv.find(",high,");
    REQUIRE(low_pos != std::string::npos);
    REQUIRE(mid_pos != std::string::npos);
    REQUIRE(high_pos != std::string::npos);
    CHECK(low_pos < mid_pos);
    CHECK(mid_pos < high_pos);
}

TEST_CASE("benchmark reports serialize to csv and json") {
    BenchmarkReport report;
    report.per_level.push_back({DecisionMethod::mann_whitney_by, 0.01, 0.9, 0.8, 0.85});
    report.per_level.push_back({DecisionMethod::pooled_t, 0.01, 0.5, 0.4, 0.45});
    report.aggregate.push_back({DecisionMethod::mann_whitney_by, std::nullopt, 0.9, 0.8, 0.85});
    report.timings.push_back({CiMethod::percentile, 1000, 0.25});
    report.timings.push_back({CiMethod::bca, 1000, 1.5});

    const std::string acc = accuracy_report_csv(report);
    CHECK(acc.rfind("method,p1,precision,recall,f1\n", 0) == 0);
    CHECK(acc.find("mann_whitney_by,0.01,0.9,0.8,0.85\n") != std::string::npos);
    CHECK(acc.find("mann_whitney_by,all,0.9,0.8,0.85\n") != std::string::npos);

    const std::string tim = timing_report_csv(report);
    CHECK(tim.rfind("method,n,seconds\n", 0) == 0);
    CHECK(tim.find("percentile,1000,0.25\n") != std::string::npos);
    CHECK(tim.find("bca,1000,1.5\n") != std::string::npos);

    const std::string json = report_to_json(report);
    CHECK(json.find("\"accuracy\"") != std::string::npos);
    CHECK(json.find("\"timing\"") != std::string::npos);
}
