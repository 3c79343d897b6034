#include <benchmark/benchmark.h>

#include "defset/design_analysis.hpp"
#include "defset/graph.hpp"
#include "defset/model.hpp"
#include "defset/oracle.hpp"
#include "defset/rectangle_analysis.hpp"
#include "defset/search.hpp"

namespace {

using namespace defset;

EnumerationBudget census_budget() { return EnumerationBudget{0, 10'000'000, 0.0}; }

void bm_rect_census_233(benchmark::State& state) {
    PartialRectangle d = empty_rectangle(2, 3, 3);
    for (auto _ : state) {
        RectEnumeration e = enumerate_rect_completions(d, census_budget());
        benchmark::DoNotOptimize(e.completions.size());
    }
}
BENCHMARK(bm_rect_census_233);

void bm_rect_census_333(benchmark::State& state) {
    PartialRectangle d = empty_rectangle(3, 3, 3);
    for (auto _ : state) {
        RectEnumeration e = enumerate_rect_completions(d, census_budget());
        benchmark::DoNotOptimize(e.completions.size());
    }
}
BENCHMARK(bm_rect_census_333);

void bm_rect_census_333_parallel(benchmark::State& state) {
    PartialRectangle d = empty_rectangle(3, 3, 3);
    for (auto _ : state) {
        RectEnumeration e = enumerate_rect_completions(d, census_budget(), 4);
        benchmark::DoNotOptimize(e.completions.size());
    }
}
BENCHMARK(bm_rect_census_333_parallel);

void bm_rect_verdict_222(benchmark::State& state) {
    PartialRectangle d = empty_rectangle(2, 2, 2);
    d.cell(1, 1).counts = {1, 1};
    for (auto _ : state) {
        RectVerdict v = is_defining_rect(d);
        benchmark::DoNotOptimize(v.status);
    }
}
BENCHMARK(bm_rect_verdict_222);

void bm_design_verdict_53(benchmark::State& state) {
    PartialDesign d;
    d.points = 5;
    d.block_size = 3;
    for (const auto& [block, mult] : full_design_candidate(5, 3).blocks) d.blocks.push_back(block);
    d.blocks.pop_back();
    for (auto _ : state) {
        DesignVerdict v = is_defining_design(d);
        benchmark::DoNotOptimize(v.status);
    }
}
BENCHMARK(bm_design_verdict_53);

void bm_latin_census_4(benchmark::State& state) {
    PartialLatin p = empty_latin(4);
    for (auto _ : state) {
        LatinEnumeration e = latin_completions(p, census_budget());
        benchmark::DoNotOptimize(e.count);
    }
}
BENCHMARK(bm_latin_census_4);

void bm_rect_bound(benchmark::State& state) {
    for (auto _ : state) {
        RectBoundReport r = rect_lower_bound(3, 3, 3, BoundVariant::verbatim);
        benchmark::DoNotOptimize(r.lower_bound);
    }
}
BENCHMARK(bm_rect_bound);

void bm_design_bound(benchmark::State& state) {
    for (auto _ : state) {
        DesignBoundReport r = triple_design_bound(24);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(bm_design_bound);

void bm_even_circuit(benchmark::State& state) {
    // Two triangles sharing vertex 1: the splice path, not the quick one.
    SimpleGraph g = make_graph(5, {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {4, 5}, {5, 1}});
    for (auto _ : state) {
        auto walk = find_even_circuit(g);
        benchmark::DoNotOptimize(walk.has_value());
    }
}
BENCHMARK(bm_even_circuit);

void bm_minimize_222(benchmark::State& state) {
    SearchConfig config;
    config.seed = 7;
    config.restarts = 2;
    for (auto _ : state) {
        RectSearchResult r = minimize_rect_defining_set(2, 2, 2, config);
        benchmark::DoNotOptimize(r.best_size);
    }
}
BENCHMARK(bm_minimize_222);

} // namespace

BENCHMARK_MAIN();
