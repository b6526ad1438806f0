#include "hm3/constructions.hpp"
#include "hm3/cover.hpp"
#include "hm3/exact.hpp"
#include "hm3/extremal.hpp"
#include "hm3/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace hm3;

static void BM_dp_solver_n12(benchmark::State & state) {
    auto H = gen::random_3graph(12, 0.5, 7);
    for (auto _ : state) benchmark::DoNotOptimize(exact::max_matching_dp(H).size);
}
BENCHMARK(BM_dp_solver_n12);

static void BM_branch_solver_tight_n30(benchmark::State & state) {
    auto H = gen::extremal_construction(30).H;
    for (auto _ : state) benchmark::DoNotOptimize(exact::max_matching_branch(H).size);
}
BENCHMARK(BM_branch_solver_tight_n30);

static void BM_branch_solver_random_n30(benchmark::State & state) {
    auto H = gen::random_3graph(30, 0.6, 3);
    for (auto _ : state) benchmark::DoNotOptimize(exact::max_matching_branch(H).size);
}
BENCHMARK(BM_branch_solver_random_n30);

static void BM_greedy_cover_n60(benchmark::State & state) {
    auto H = gen::random_3graph(60, 0.8, 1);
    for (auto _ : state) {
        auto cover = cover::greedy_tripartite_cover(H, H.all_vertices(), 1, Rational(1, 20));
        benchmark::DoNotOptimize(cover.members.size());
    }
}
BENCHMARK(BM_greedy_cover_n60);

static void BM_extremal_matcher_n60(benchmark::State & state) {
    auto inst = gen::extremal_plus_instance(60);
    for (auto _ : state) {
        auto M = extremal::extremal_perfect_matching(inst.H, inst.B, Rational(1, 20), 11);
        benchmark::DoNotOptimize(M.size());
    }
}
BENCHMARK(BM_extremal_matcher_n60);

static void BM_pipeline_random_n60(benchmark::State & state) {
    auto H = gen::random_3graph(60, 0.8, 1);
    pipeline::PipelineConfig cfg;
    cfg.fallback = pipeline::PipelineConfig::Fallback::Off;
    for (auto _ : state) {
        auto res = pipeline::perfect_matching(H, cfg);
        benchmark::DoNotOptimize(res.status);
    }
}
BENCHMARK(BM_pipeline_random_n60);

BENCHMARK_MAIN();
