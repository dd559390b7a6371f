#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "catord/rng.hpp"
#include "catord/types.hpp"

namespace catord {

enum class StatKind { mean, mean_diff };

// Bootstrap statistics plus the statistic evaluated on the original sample.
struct ReplicateSet {
    std::vector<double> replicates;
    double source_stat = 0.0;
    StatKind kind = StatKind::mean;
};

// Non-fatal notices (small groups and the like). The default handler writes
// "warning: ..." to stderr; tests install their own sink.
void set_warning_handler(std::function<void(std::string_view)> handler);
void emit_warning(std::string_view message);

// K replicates, each the mean of |values| draws with replacement.
ReplicateSet bootstrap_mean(std::span<const double> values, std::size_t k,
                            const RngStream& rng);

// K replicates of mean(y_k) - mean(x_k) with both groups resampled
// independently in every round.
ReplicateSet bootstrap_mean_diff(std::span<const double> x,
                                 std::span<const double> y, std::size_t k,
                                 const RngStream& rng);

// Empirical (alpha/2, 1-alpha/2) quantiles of the replicates, linear
// interpolation between order statistics at rank 1+(K-1)q.
ConfidenceInterval percentile_ci(const ReplicateSet& reps, double alpha);

// mean(replicates) +/- z_{alpha/2} * sd(replicates). The replicates are
// already bootstrap means, so their spread is the standard error; no
// further 1/sqrt(K) division is applied.
ConfidenceInterval normal_ci(const ReplicateSet& reps, double alpha);

// Bias-corrected and accelerated interval: replicate quantiles at levels
// shifted by the bias term z0 and the jackknife acceleration a. Degenerate
// inputs (all replicates equal, or all jackknife values equal) fall back to
// percentile bounds with the fallback flag set.
ConfidenceInterval bca_ci(std::span<const double> original,
                          const ReplicateSet& reps, double alpha);

std::pair<ReplicateSet, ConfidenceInterval> mean_ci(
    std::span<const double> values, const AnalysisConfig& cfg,
    const RngStream& rng);

// Interval for mean(y) - mean(x); callers pass the lower-sorted group first
// so the orientation is higher minus lower.
std::pair<ReplicateSet, ConfidenceInterval> mean_diff_ci(
    std::span<const double> x, std::span<const double> y,
    const AnalysisConfig& cfg, const RngStream& rng);

// Linear-interpolation quantile over already-sorted data. q outside [0,1]
// is clamped.
double quantile_sorted(std::span<const double> sorted, double q);

namespace detail {

// Leave-one-out statistics. The statistic is re-evaluated in full for every
// deletion, which keeps the routine generic but makes it quadratic in the
// sample size; this is the cost that separates BCa from percentile at scale.
std::vector<double> jackknife_mean(std::span<const double> values);
std::vector<double> jackknife_mean_diff(std::span<const double> x,
                                        std::span<const double> y);

ConfidenceInterval bca_from_jackknife(std::span<const double> jack,
                                      const ReplicateSet& reps, double alpha);

}  // namespace detail

}  // namespace catord
