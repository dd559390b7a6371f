#pragma once

#include <filesystem>
#include <string>

#include "catord/dominance.hpp"
#include "catord/simulate.hpp"
#include "catord/types.hpp"

namespace catord {

// Reads a UTF-8 CSV with header "category,value". Errors carry 1-based file
// line numbers ("parse error at line N").
ObservationSet parse_csv(const std::filesystem::path& path);

std::string observations_to_csv(const ObservationSet& obs);

// Analysis result as a JSON document with top-level keys config, order,
// mean_cis, pairs, edges, density. Numbers round-trip bit-exactly.
std::string analyze_to_json(const DominanceResult& result,
                            const AnalysisConfig& cfg);

struct AnalyzeDocument {
    AnalysisConfig config;
    DominanceResult result;
};

AnalyzeDocument analyze_from_json(const std::string& text);
AnalyzeDocument read_analyze_json(const std::filesystem::path& path);

// Graphviz digraph, one node per category (label carries the sample mean),
// one edge per dominance relation, dominator -> dominated.
std::string dominance_to_dot(const DominanceResult& result);

// Plot-ready ladder of per-category mean CIs ordered by sample mean.
std::string ci_table_csv(const DominanceResult& result);

std::string accuracy_report_csv(const BenchmarkReport& report);
std::string timing_report_csv(const BenchmarkReport& report);
std::string report_to_json(const BenchmarkReport& report);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace catord
