// Reference (dense bit-packed, serial) vs Serial (sparse) vs Parallel (sparse, OpenMP over degrees/tasks).

#include <benchmark/benchmark.h>

#include "csh/floer.hpp"

using namespace csh;

namespace {

const Backend kBackends[] = {Backend::Reference, Backend::Serial, Backend::Parallel};
const char* kNames[] = {"reference", "serial", "parallel"};

ComplexPtr telescope_for(int N) {
    static std::map<int, ComplexPtr> cache;
    auto& c = cache[N];
    if (!c) c = build_cochain_model(RadiusProfile::cochain_side(Rational(1, 2)), N);
    return c;
}

void BM_HomologyWindow(benchmark::State& st) {
    auto c = telescope_for(static_cast<int>(st.range(1)));
    Backend b = kBackends[st.range(0)];
    st.SetLabel(kNames[st.range(0)]);
    for (auto _ : st) benchmark::DoNotOptimize(homology_window(*c, -10, 5, b).total());
}

void BM_CompletedRanks(benchmark::State& st) {
    auto c = telescope_for(static_cast<int>(st.range(1)));
    Backend b = kBackends[st.range(0)];
    st.SetLabel(kNames[st.range(0)]);
    RankOptions o;
    o.backend = b;
    o.truncation_level = static_cast<int>(st.range(1)) - 1;
    Schedule s = Schedule::symmetric(5, 5, 4);
    for (auto _ : st) benchmark::DoNotOptimize(completed_ranks(*c, s, o).total);
}

}  // namespace

BENCHMARK(BM_HomologyWindow)->ArgsProduct({{0, 1, 2}, {20, 40}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompletedRanks)->ArgsProduct({{0, 1, 2}, {40, 60}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
