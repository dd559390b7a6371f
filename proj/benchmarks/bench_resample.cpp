#include <benchmark/benchmark.h>

#include <vector>

#include "catord/resample.hpp"
#include "catord/simulate.hpp"
#include "catord/stat_tests.hpp"

namespace {

std::vector<double> mixture_sample(std::size_t n, bool top) {
    const auto spec = catord::ScenarioSpec::defaults();
    return catord::sample_mixture(top ? spec.top : spec.base, n,
                                  catord::RngStream{7, top ? 1u : 0u});
}

void BM_BootstrapMean(benchmark::State& state) {
    const auto values = mixture_sample(static_cast<std::size_t>(state.range(0)), false);
    const std::size_t k = 1000;
    std::uint64_t stream = 0;
    for (auto _ : state) {
        auto reps = catord::bootstrap_mean(values, k, catord::RngStream{1, stream++});
        benchmark::DoNotOptimize(reps.replicates.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(k * values.size()));
}
BENCHMARK(BM_BootstrapMean)->Arg(100)->Arg(1000)->Arg(10000);

void BM_MeanDiffCi(benchmark::State& state, catord::CiMethod method) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = mixture_sample(n, false);
    const auto y = mixture_sample(n, true);
    catord::AnalysisConfig cfg;
    cfg.reps = 1000;
    cfg.ci_method = method;
    std::uint64_t stream = 0;
    for (auto _ : state) {
        auto out = catord::mean_diff_ci(x, y, cfg, catord::RngStream{2, stream++});
        benchmark::DoNotOptimize(out.second.lower);
    }
}
BENCHMARK_CAPTURE(BM_MeanDiffCi, percentile, catord::CiMethod::percentile)
    ->Arg(1000)
    ->Arg(10000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MeanDiffCi, bca, catord::CiMethod::bca)
    ->Arg(1000)
    ->Arg(10000)
    ->Unit(benchmark::kMillisecond);

void BM_MannWhitney(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = mixture_sample(n, false);
    const auto y = mixture_sample(n, true);
    for (auto _ : state) {
        auto res = catord::mann_whitney_one_sided(x, y);
        benchmark::DoNotOptimize(res.p_value);
    }
}
BENCHMARK(BM_MannWhitney)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
