#include "catord/resample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>

#include <boost/math/distributions/normal.hpp>

namespace catord {

namespace {

constexpr std::size_t kSmallSampleFloor = 5;
constexpr std::size_t kReplicateChunk = 1024;

std::mutex g_warn_mutex;
std::function<void(std::string_view)> g_warn_handler;

double sample_mean(std::span<const double> values) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

double norm_quantile(double p) {
    static const boost::math::normal_distribution<double> unit(0.0, 1.0);
    return boost::math::quantile(unit, p);
}

double norm_cdf(double x) {
    static const boost::math::normal_distribution<double> unit(0.0, 1.0);
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return boost::math::cdf(unit, x);
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must be in (0,1)");
}

void check_replicates(const ReplicateSet& reps) {
    if (reps.replicates.size() < 2) throw Error("insufficient replicates");
}

}  // namespace

void set_warning_handler(std::function<void(std::string_view)> handler) {
    std::lock_guard lock(g_warn_mutex);
    g_warn_handler = std::move(handler);
}

void emit_warning(std::string_view message) {
    std::lock_guard lock(g_warn_mutex);
    if (g_warn_handler) {
        g_warn_handler(message);
    } else {
        std::cerr << "warning: " << message << '\n';
    }
}

ReplicateSet bootstrap_mean(std::span<const double> values, std::size_t k,
                            const RngStream& rng) {
    if (values.empty()) throw Error("empty sample");
    if (k < 1) throw Error("replicate count must be at least 1");
    if (values.size() < kSmallSampleFloor) {
        emit_warning("bootstrapping a group of only " +
                     std::to_string(values.size()) +
                     " observations; intervals may be unstable");
    }

    ReplicateSet out;
    out.kind = StatKind::mean;
    out.source_stat = sample_mean(values);
    out.replicates.resize(k);

    const std::size_t n = values.size();
    const auto chunks =
        static_cast<std::int64_t>((k + kReplicateChunk - 1) / kReplicateChunk);

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        auto engine = rng.derive(static_cast<std::uint64_t>(c)).engine();
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        const std::size_t begin = static_cast<std::size_t>(c) * kReplicateChunk;
        const std::size_t end = std::min(begin + kReplicateChunk, k);
        for (std::size_t r = begin; r < end; ++r) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += values[pick(engine)];
            out.replicates[r] = sum / static_cast<double>(n);
        }
    }
    return out;
}

ReplicateSet bootstrap_mean_diff(std::span<const double> x,
                                 std::span<const double> y, std::size_t k,
                                 const RngStream& rng) {
    if (x.empty()) throw Error("empty sample (first group)");
    if (y.empty()) throw Error("empty sample (second group)");
    if (k < 1) throw Error("replicate count must be at least 1");
    if (std::min(x.size(), y.size()) < kSmallSampleFloor) {
        emit_warning("bootstrapping a group of only " +
                     std::to_string(std::min(x.size(), y.size())) +
                     " observations; intervals may be unstable");
    }

    ReplicateSet out;
    out.kind = StatKind::mean_diff;
    out.source_stat = sample_mean(y) - sample_mean(x);
    out.replicates.resize(k);

    const std::size_t nx = x.size();
    const std::size_t ny = y.size();
    const auto chunks =
        static_cast<std::int64_t>((k + kReplicateChunk - 1) / kReplicateChunk);

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        auto engine = rng.derive(static_cast<std::uint64_t>(c)).engine();
        std::uniform_int_distribution<std::size_t> pick_x(0, nx - 1);
        std::uniform_int_distribution<std::size_t> pick_y(0, ny - 1);
        const std::size_t begin = static_cast<std::size_t>(c) * kReplicateChunk;
        const std::size_t end = std::min(begin + kReplicateChunk, k);
        for (std::size_t r = begin; r < end; ++r) {
            double sum_x = 0.0;
            for (std::size_t i = 0; i < nx; ++i) sum_x += x[pick_x(engine)];
            double sum_y = 0.0;
            for (std::size_t i = 0; i < ny; ++i) sum_y += y[pick_y(engine)];
            out.replicates[r] = sum_y / static_cast<double>(ny) -
                                sum_x / static_cast<double>(nx);
        }
    }
    return out;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    q = std::clamp(q, 0.0, 1.0);
    const std::size_t n = sorted.size();
    const double h = static_cast<double>(n - 1) * q;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ConfidenceInterval percentile_ci(const ReplicateSet& reps, double alpha) {
    check_replicates(reps);
    check_alpha(alpha);

    std::vector<double> sorted(reps.replicates);
    std::sort(sorted.begin(), sorted.end());

    ConfidenceInterval ci;
    ci.lower = quantile_sorted(sorted, alpha / 2.0);
    ci.upper = quantile_sorted(sorted, 1.0 - alpha / 2.0);
    ci.level = 1.0 - alpha;
    ci.method = CiMethod::percentile;
    ci.point_estimate = reps.source_stat;
    return ci;
}

ConfidenceInterval normal_ci(const ReplicateSet& reps, double alpha) {
    check_replicates(reps);
    check_alpha(alpha);

    const auto& r = reps.replicates;
    const double k = static_cast<double>(r.size());
    const double center = std::accumulate(r.begin(), r.end(), 0.0) / k;
    double ss = 0.0;
    for (double v : r) ss += (v - center) * (v - center);
    const double sd = std::sqrt(ss / (k - 1.0));
    const double z = norm_quantile(1.0 - alpha / 2.0);

    ConfidenceInterval ci;
    ci.lower = center - z * sd;
    ci.upper = center + z * sd;
    ci.level = 1.0 - alpha;
    ci.method = CiMethod::normal;
    ci.point_estimate = reps.source_stat;
    return ci;
}

namespace detail {

std::vector<double> jackknife_mean(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<double> stats(n);
    for (std::size_t skip = 0; skip < n; ++skip) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != skip) sum += values[j];
        }
        stats[skip] = sum / static_cast<double>(n - 1);
    }
    return stats;
}

std::vector<double> jackknife_mean_diff(std::span<const double> x,
                                        std::span<const double> y) {
    if (x.size() < 2 || y.size() < 2) return {};  // nothing to delete from
    const double mean_x = sample_mean(x);
    const double mean_y = sample_mean(y);

    std::vector<double> stats;
    stats.reserve(x.size() + y.size());
    for (double loo : jackknife_mean(x)) stats.push_back(mean_y - loo);
    for (double loo : jackknife_mean(y)) stats.push_back(loo - mean_x);
    return stats;
}

ConfidenceInterval bca_from_jackknife(std::span<const double> jack,
                                      const ReplicateSet& reps, double alpha) {
    check_replicates(reps);
    check_alpha(alpha);

    const auto& r = reps.replicates;
    const auto [rep_min, rep_max] = std::minmax_element(r.begin(), r.end());
    // a too-short jackknife (some group too small to delete from) is as
    // degenerate as an all-equal one
    bool degenerate = jack.size() < 2 || (*rep_min == *rep_max);
    if (!degenerate) {
        const auto [jack_min, jack_max] =
            std::minmax_element(jack.begin(), jack.end());
        degenerate = !std::isfinite(*jack_min) || !std::isfinite(*jack_max) ||
                     (*jack_min == *jack_max);
    }
    if (degenerate) {
        ConfidenceInterval ci = percentile_ci(reps, alpha);
        ci.method = CiMethod::bca;
        ci.percentile_fallback = true;
        return ci;
    }

    const double k = static_cast<double>(r.size());
    const auto below = static_cast<double>(
        std::count_if(r.begin(), r.end(),
                      [&](double v) { return v < reps.source_stat; }));
    // Guard against z0 = +/-inf when no (or every) replicate sits below the
    // source statistic.
    const double prop = std::clamp(below / k, 1.0 / (k + 1.0), k / (k + 1.0));
    const double z0 = norm_quantile(prop);

    const double jack_bar =
        std::accumulate(jack.begin(), jack.end(), 0.0) /
        static_cast<double>(jack.size());
    double sum_sq = 0.0;
    double sum_cu = 0.0;
    for (double v : jack) {
        const double d = jack_bar - v;
        sum_sq += d * d;
        sum_cu += d * d * d;
    }
    const double accel = sum_cu / (6.0 * std::pow(sum_sq, 1.5));

    const auto adjusted_level = [&](double z_tail) {
        const double t = z0 + z_tail;
        const double denom = 1.0 - accel * t;
        if (denom <= 0.0) return t > 0 ? 1.0 : 0.0;  // adjustment saturates
        return norm_cdf(z0 + t / denom);
    };
    const double level_lo = adjusted_level(norm_quantile(alpha / 2.0));
    const double level_hi = adjusted_level(norm_quantile(1.0 - alpha / 2.0));

    std::vector<double> sorted(r);
    std::sort(sorted.begin(), sorted.end());

    ConfidenceInterval ci;
    ci.lower = quantile_sorted(sorted, level_lo);
    ci.upper = quantile_sorted(sorted, level_hi);
    ci.level = 1.0 - alpha;
    ci.method = CiMethod::bca;
    ci.point_estimate = reps.source_stat;
    return ci;
}

}  // namespace detail

ConfidenceInterval bca_ci(std::span<const double> original,
                          const ReplicateSet& reps, double alpha) {
    if (original.size() < 2) throw Error("insufficient sample");
    return detail::bca_from_jackknife(detail::jackknife_mean(original), reps,
                                      alpha);
}

std::pair<ReplicateSet, ConfidenceInterval> mean_ci(
    std::span<const double> values, const AnalysisConfig& cfg,
    const RngStream& rng) {
    validate(cfg);
    ReplicateSet reps = bootstrap_mean(values, cfg.reps, rng);
    ConfidenceInterval ci;
    switch (cfg.ci_method) {
        case CiMethod::percentile: ci = percentile_ci(reps, cfg.alpha); break;
        case CiMethod::normal: ci = normal_ci(reps, cfg.alpha); break;
        case CiMethod::bca: ci = bca_ci(values, reps, cfg.alpha); break;
    }
    return {std::move(reps), ci};
}

std::pair<ReplicateSet, ConfidenceInterval> mean_diff_ci(
    std::span<const double> x, std::span<const double> y,
    const AnalysisConfig& cfg, const RngStream& rng) {
    validate(cfg);
    ReplicateSet reps = bootstrap_mean_diff(x, y, cfg.reps, rng);
    ConfidenceInterval ci;
    switch (cfg.ci_method) {
        case CiMethod::percentile: ci = percentile_ci(reps, cfg.alpha); break;
        case CiMethod::normal: ci = normal_ci(reps, cfg.alpha); break;
        case CiMethod::bca:
            ci = detail::bca_from_jackknife(detail::jackknife_mean_diff(x, y),
                                            reps, cfg.alpha);
            break;
    }
    return {std::move(reps), ci};
}

}  // namespace catord
