#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace catord {

// Raised for anything wrong with the data or a request made of it.
// The CLI maps this to exit code 2; everything else is treated as internal.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct Observation {
    std::string category;
    double value = 0.0;
};

// Raw (category, value) pairs as ingested. Duplicate rows are kept as
// distinct observations.
struct ObservationSet {
    std::vector<Observation> records;
};

// Throws Error("empty dataset") or Error("invalid value at row N") when a
// record holds NaN or an infinity. Row indices are zero-based.
void validate(const ObservationSet& obs);

struct Group {
    std::string label;
    std::vector<double> values;
    double mean = 0.0;
};

// Per-category buckets sorted by ascending sample mean. Mean ties are broken
// by lexicographic label so the order is deterministic.
struct GroupedData {
    std::vector<Group> groups;
};

// Partitions the records by category label (labels are trimmed of
// surrounding whitespace, then compared case-sensitively).
GroupedData group_by_category(const ObservationSet& obs);

enum class CiMethod { percentile, bca, normal };

std::string to_string(CiMethod method);
CiMethod ci_method_from_string(const std::string& name);

struct AnalysisConfig {
    double alpha = 0.05;
    std::size_t reps = 1000;
    CiMethod ci_method = CiMethod::percentile;
    std::uint64_t seed = 0;
};

void validate(const AnalysisConfig& cfg);

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;           // 1 - alpha
    CiMethod method = CiMethod::percentile;
    double point_estimate = 0.0;  // statistic on the original sample
    // Set when a degenerate BCa construction fell back to percentile bounds.
    bool percentile_fallback = false;
};

}  // namespace catord
