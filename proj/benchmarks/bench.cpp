#include <benchmark/benchmark.h>

#include "logdelta/engine.hpp"
#include "logdelta/toric.hpp"

using namespace logdelta;

namespace {

void BM_zariski_decompose(benchmark::State& state) {
    const SurfaceModel x = preset_I9Bn(4, FiberConfig::both_singular);
    const Scalar beta(make_rat(1, 29));
    DivisorClass d = log_anticanonical(x, beta);
    d += x.curve("H1-E1").cls;
    d += x.curve("H2-E2").cls;
    for (auto _ : state) {
        auto z = zariski_decompose(x, d);
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(BM_zariski_decompose);

void BM_volume_family_minimizer(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SurfaceModel x = preset_I9Bn(n, FiberConfig::q1_singular);
    const Scalar beta(make_rat(1, 7 * n + 2));
    PointSpec point = q_point(x, "q1");
    PltCandidate cand;
    cand.a = 1;
    cand.b = 1;
    cand.j_c = 1;
    cand.center = "q1";
    cand.germs = point.germs;
    for (auto _ : state) {
        auto r = evaluate_candidate(x, cand, beta);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_volume_family_minimizer)->Arg(3)->Arg(6)->Arg(8);

void BM_delta_at_point(benchmark::State& state) {
    const int cap = static_cast<int>(state.range(0));
    const SurfaceModel x = preset_I9Bn(2, FiberConfig::both_singular);
    const Scalar beta(make_rat(1, 15));
    const PointSpec point = q_point(x, "q1");
    for (auto _ : state) {
        auto r = delta_at_point(2, beta, point, cap);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_delta_at_point)->Arg(8)->Arg(16)->Arg(24);

void BM_toric_scan(benchmark::State& state) {
    const int box = static_cast<int>(state.range(0));
    const Fan fan = dp7_fan();
    const Scalar beta(make_rat(1, 10));
    const TorusDivisor d{{beta + Scalar(1), Scalar(2) * beta + Scalar(1), Scalar(2) * beta,
                          Scalar(0), Scalar(0)}};
    for (auto _ : state) {
        auto scan = toric_delta_scan(fan, d, {}, box);
        benchmark::DoNotOptimize(scan);
    }
}
BENCHMARK(BM_toric_scan)->Arg(6)->Arg(12)->Arg(24);

void BM_ab_sequences(benchmark::State& state) {
    for (auto _ : state) {
        long total = 0;
        // All realizable branch data with m <= 10.
        std::vector<BranchData> stack{BranchData{1, {}}};
        while (!stack.empty()) {
            BranchData cur = stack.back();
            stack.pop_back();
            total += ab_sequence(cur).a;
            if (cur.m >= 10) continue;
            const int next = cur.m + 1;
            const int stay = next == 2 ? 0 : cur.q.at(cur.m);
            for (int value : {stay, next - 2}) {
                BranchData ext = cur;
                ext.m = next;
                ext.q[next] = value;
                stack.push_back(std::move(ext));
                if (stay == next - 2) break;
            }
        }
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_ab_sequences);

}  // namespace

BENCHMARK_MAIN();
