#include "exclusion/brackets.hpp"
#include "exclusion/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace exclusion;

namespace {

Hole two_rect_hole() {
    return Hole(normalize_hole(std::vector<Rect>{Rect{{ratio(1, 7), ratio(3, 8)}, {ratio(1, 5), ratio(2, 3)}, false},
                                                 Rect{{ratio(5, 9), ratio(7, 8)}, {ratio(1, 9), ratio(1, 2)}, false}},
                               false));
}

Hole three_arc_hole() { return Hole(make_hole_1d({{ratio(1, 9), ratio(1, 5)}, {ratio(2, 5), ratio(3, 7)}, {ratio(5, 6), Rational(1)}})); }

kernels::Exec exec_of(const benchmark::State& st) {
    return st.range(1) ? kernels::Exec::Parallel : kernels::Exec::Serial;
}

void BM_KillMasksBaker(benchmark::State& st) {
    const Hole h = two_rect_hole();
    const SystemSpec sys = SystemSpec::baker(2);
    const int depth = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(kill_masks(sys, h, depth, {}, exec_of(st)));
    st.SetItemsProcessed(st.iterations() * (std::int64_t{1} << (2 * depth)));
}

void BM_KillMasksCircle(benchmark::State& st) {
    const Hole h = three_arc_hole();
    const SystemSpec sys = SystemSpec::circle(2);
    const int depth = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(kill_masks(sys, h, depth, {}, exec_of(st)));
    st.SetItemsProcessed(st.iterations() * (std::int64_t{1} << depth));
}

void BM_Trim(benchmark::State& st) {
    const int depth = static_cast<int>(st.range(0));
    const Sft s = inner_sft(SystemSpec::baker(2), two_rect_hole(), depth);
    const auto serial = kernels::trim(s.allowed(), nullptr, 2, s.window(), true, kernels::Exec::Serial);
    const auto parallel = kernels::trim(s.allowed(), nullptr, 2, s.window(), true, kernels::Exec::Parallel);
    if (serial != parallel) {
        st.SkipWithError("serial and parallel trim disagree");
        return;
    }
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::trim(s.allowed(), nullptr, 2, s.window(), true, exec_of(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.vertex_space()));
}

void BM_BracketsAgree(benchmark::State& st) {
    const Hole h = two_rect_hole();
    const SystemSpec sys = SystemSpec::baker(2);
    const int depth = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(brackets_agree(sys, h, depth, {}, exec_of(st)));
}

} // namespace

BENCHMARK(BM_KillMasksBaker)->ArgsProduct({{6, 8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KillMasksCircle)->ArgsProduct({{16, 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Trim)->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BracketsAgree)->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
