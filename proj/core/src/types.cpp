#include "catord/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace catord {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

void validate(const ObservationSet& obs) {
    if (obs.records.empty()) throw Error("empty dataset");
    for (std::size_t i = 0; i < obs.records.size(); ++i) {
        if (!std::isfinite(obs.records[i].value)) {
            throw Error("invalid value at row " + std::to_string(i));
        }
    }
}

GroupedData group_by_category(const ObservationSet& obs) {
    validate(obs);

    std::map<std::string, std::vector<double>> buckets;
    for (const auto& rec : obs.records) {
        buckets[trim(rec.category)].push_back(rec.value);
    }

    GroupedData out;
    out.groups.reserve(buckets.size());
    for (auto& [label, values] : buckets) {
        Group g;
        g.label = label;
        g.mean = std::accumulate(values.begin(), values.end(), 0.0) /
                 static_cast<double>(values.size());
        g.values = std::move(values);
        out.groups.push_back(std::move(g));
    }

    std::sort(out.groups.begin(), out.groups.end(),
              [](const Group& a, const Group& b) {
                  if (a.mean != b.mean) return a.mean < b.mean;
                  return a.label < b.label;
              });
    return out;
}

std::string to_string(CiMethod method) {
    switch (method) {
        case CiMethod::percentile: return "percentile";
        case CiMethod::bca: return "bca";
        case CiMethod::normal: return "normal";
    }
    return "percentile";
}

CiMethod ci_method_from_string(const std::string& name) {
    if (name == "percentile") return CiMethod::percentile;
    if (name == "bca") return CiMethod::bca;
    if (name == "normal") return CiMethod::normal;
    throw Error("unknown CI method: " + name);
}

void validate(const AnalysisConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        throw Error("alpha must be in (0,1)");
    }
    if (cfg.reps < 1) throw Error("replicate count must be at least 1");
}

}  // namespace catord
