#include "catord/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace catord {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// %.15g: enough for the CSV loss-free contract without locale surprises
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

ordered_json ci_to_json(const ConfidenceInterval& ci) {
    ordered_json j;
    j["lower"] = ci.lower;
    j["upper"] = ci.upper;
    j["level"] = ci.level;
    j["method"] = to_string(ci.method);
    j["point_estimate"] = ci.point_estimate;
    j["percentile_fallback"] = ci.percentile_fallback;
    return j;
}

ConfidenceInterval ci_from_json(const ordered_json& j) {
    ConfidenceInterval ci;
    ci.lower = j.at("lower").get<double>();
    ci.upper = j.at("upper").get<double>();
    ci.level = j.at("level").get<double>();
    ci.method = ci_method_from_string(j.at("method").get<std::string>());
    ci.point_estimate = j.at("point_estimate").get<double>();
    ci.percentile_fallback = j.at("percentile_fallback").get<bool>();
    return ci;
}

}  // namespace

ObservationSet parse_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw Error("empty dataset");
    if (trim(line) != "category,value") throw Error("bad header");

    ObservationSet obs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error("parse error at line " + std::to_string(lineno));
        }
        const std::string category = trim(line.substr(0, comma));
        const std::string value_text = trim(line.substr(comma + 1));
        double value = 0.0;
        const char* first = value_text.data();
        const char* last = first + value_text.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw Error("parse error at line " + std::to_string(lineno));
        }
        if (!std::isfinite(value)) {
            throw Error("invalid value at line " + std::to_string(lineno));
        }
        obs.records.push_back({category, value});
    }
    if (obs.records.empty()) throw Error("empty dataset");
    return obs;
}

std::string observations_to_csv(const ObservationSet& obs) {
    std::string out = "category,value\n";
    for (const auto& rec : obs.records) {
        out += rec.category;
        out += ',';
        out += fmt(rec.value);
        out += '\n';
    }
    return out;
}

std::string analyze_to_json(const DominanceResult& result,
                            const AnalysisConfig& cfg) {
    ordered_json doc;
    doc["config"] = {
        {"alpha", cfg.alpha},
        {"reps", cfg.reps},
        {"ci_method", to_string(cfg.ci_method)},
        {"seed", cfg.seed},
    };
    doc["order"] = result.order;

    ordered_json mean_cis = ordered_json::array();
    for (std::size_t c = 0; c < result.order.size(); ++c) {
        ordered_json entry;
        entry["category"] = result.order[c];
        entry["n"] = result.sizes[c];
        entry["mean"] = result.means[c];
        entry["ci"] = ci_to_json(result.mean_cis[c]);
        mean_cis.push_back(std::move(entry));
    }
    doc["mean_cis"] = std::move(mean_cis);

    ordered_json pairs = ordered_json::array();
    for (const auto& pair : result.pairs) {
        ordered_json entry;
        entry["low_category"] = result.order[pair.low];
        entry["high_category"] = result.order[pair.high];
        entry["diff_ci"] = ci_to_json(pair.diff_ci);
        entry["p_raw"] = pair.p_raw;
        entry["p_adjusted"] = pair.p_adjusted;
        entry["dominates"] = pair.dominates;
        pairs.push_back(std::move(entry));
    }
    doc["pairs"] = std::move(pairs);

    ordered_json edges = ordered_json::array();
    for (const auto& [from, to] : result.network.edges) {
        edges.push_back({{"from", result.network.nodes[from]},
                         {"to", result.network.nodes[to]}});
    }
    doc["edges"] = std::move(edges);
    doc["density"] = result.density;

    return doc.dump(2) + "\n";
}

AnalyzeDocument analyze_from_json(const std::string& text) {
    const ordered_json doc = ordered_json::parse(text);

    AnalyzeDocument out;
    out.config.alpha = doc.at("config").at("alpha").get<double>();
    out.config.reps = doc.at("config").at("reps").get<std::size_t>();
    out.config.ci_method =
        ci_method_from_string(doc.at("config").at("ci_method").get<std::string>());
    out.config.seed = doc.at("config").at("seed").get<std::uint64_t>();

    DominanceResult& result = out.result;
    result.order = doc.at("order").get<std::vector<std::string>>();
    for (const auto& entry : doc.at("mean_cis")) {
        result.sizes.push_back(entry.at("n").get<std::size_t>());
        result.means.push_back(entry.at("mean").get<double>());
        result.mean_cis.push_back(ci_from_json(entry.at("ci")));
    }

    const auto index_of = [&](const std::string& label) {
        for (std::size_t i = 0; i < result.order.size(); ++i) {
            if (result.order[i] == label) return i;
        }
        throw Error("unknown category: " + label);
    };

    for (const auto& entry : doc.at("pairs")) {
        PairSummary pair;
        pair.low = index_of(entry.at("low_category").get<std::string>());
        pair.high = index_of(entry.at("high_category").get<std::string>());
        pair.diff_ci = ci_from_json(entry.at("diff_ci"));
        pair.p_raw = entry.at("p_raw").get<double>();
        pair.p_adjusted = entry.at("p_adjusted").get<double>();
        pair.dominates = entry.at("dominates").get<bool>();
        result.pairs.push_back(std::move(pair));
    }

    result.network.nodes = result.order;
    result.network.alpha = out.config.alpha;
    for (const auto& entry : doc.at("edges")) {
        result.network.edges.emplace_back(
            index_of(entry.at("from").get<std::string>()),
            index_of(entry.at("to").get<std::string>()));
    }
    result.density = doc.at("density").get<double>();
    return out;
}

AnalyzeDocument read_analyze_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return analyze_from_json(buf.str());
}

std::string dominance_to_dot(const DominanceResult& result) {
    std::string out = "digraph dominance {\n";
    for (std::size_t c = 0; c < result.order.size(); ++c) {
        out += "  \"" + dot_escape(result.order[c]) + "\" [label=\"" +
               dot_escape(result.order[c]) + "\\nmean=" + fmt(result.means[c]) +
               "\"];\n";
    }
    for (const auto& [from, to] : result.network.edges) {
        out += "  \"" + dot_escape(result.network.nodes[from]) + "\" -> \"" +
               dot_escape(result.network.nodes[to]) + "\";\n";
    }
    out += "}\n";
    return out;
}

std::string ci_table_csv(const DominanceResult& result) {
    std::string out = "rank,category,n,mean,lower,upper,level,method\n";
    for (std::size_t c = 0; c < result.order.size(); ++c) {
        const auto& ci = result.mean_cis[c];
        out += std::to_string(c + 1) + ',' + result.order[c] + ',' +
               std::to_string(result.sizes[c]) + ',' + fmt(result.means[c]) +
               ',' + fmt(ci.lower) + ',' + fmt(ci.upper) + ',' + fmt(ci.level) +
               ',' + to_string(ci.method) + '\n';
    }
    return out;
}

std::string accuracy_report_csv(const BenchmarkReport& report) {
    std::string out = "method,p1,precision,recall,f1\n";
    const auto row = [&](const AccuracyRow& r) {
        out += to_string(r.method) + ',' + (r.p1 ? fmt(*r.p1) : "all") + ',' +
               fmt(r.precision) + ',' + fmt(r.recall) + ',' + fmt(r.f1) + '\n';
    };
    for (const auto& r : report.per_level) row(r);
    for (const auto& r : report.aggregate) row(r);
    return out;
}

std::string timing_report_csv(const BenchmarkReport& report) {
    std::string out = "method,n,seconds\n";
    for (const auto& r : report.timings) {
        out += to_string(r.method) + ',' + std::to_string(r.n) + ',' +
               fmt(r.seconds) + '\n';
    }
    return out;
}

std::string report_to_json(const BenchmarkReport& report) {
    ordered_json doc;
    ordered_json per_level = ordered_json::array();
    for (const auto& r : report.per_level) {
        per_level.push_back({{"method", to_string(r.method)},
                             {"p1", *r.p1},
                             {"precision", r.precision},
                             {"recall", r.recall},
                             {"f1", r.f1}});
    }
    ordered_json aggregate = ordered_json::array();
    for (const auto& r : report.aggregate) {
        aggregate.push_back({{"method", to_string(r.method)},
                             {"precision", r.precision},
                             {"recall", r.recall},
                             {"f1", r.f1}});
    }
    ordered_json timings = ordered_json::array();
    for (const auto& r : report.timings) {
        timings.push_back({{"method", to_string(r.method)},
                           {"n", r.n},
                           {"seconds", r.seconds}});
    }
    doc["accuracy"] = {{"per_level", std::move(per_level)},
                       {"aggregate", std::move(aggregate)}};
    doc["timing"] = std::move(timings);
    return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << text;
    if (!out) throw Error("cannot write file: " + path.string());
}

}  // namespace catord
