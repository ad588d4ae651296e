#include <benchmark/benchmark.h>

#include <random>

#include "rdep/ccp.hpp"
#include "rdep/lattice.hpp"
#include "rdep/linprog.hpp"
#include "rdep/reduced.hpp"
#include "rdep/svm.hpp"

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
    return v;
}

rdep::TrainingSet blob_set(std::size_t per_class, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    rdep::Matrix x(0, dim);
    std::vector<int> y;
    for (std::size_t i = 0; i < per_class; ++i) {
        auto p = random_vec(rng, dim);
        p[0] -= 2.0;
        x.push_row(p);
        y.push_back(-1);
    }
    for (std::size_t i = 0; i < per_class; ++i) {
        auto p = random_vec(rng, dim);
        p[0] += 2.0;
        x.push_row(p);
        y.push_back(+1);
    }
    return rdep::make_training_set(std::move(x), std::move(y));
}

void BM_DilateEval(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    auto unit = rdep::make_morph_unit(rdep::MorphKind::Dilation, random_vec(rng, n));
    auto x = random_vec(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(rdep::dilate(unit, x));
}
BENCHMARK(BM_DilateEval)->Arg(8)->Arg(64)->Arg(512);

void BM_KernelGaussian(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    auto spec = rdep::KernelSpec::gaussian(1.0);
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(rdep::kernel_eval(spec, x, y));
}
BENCHMARK(BM_KernelGaussian)->Arg(8)->Arg(64)->Arg(512);

void BM_SvcTrain(benchmark::State& state) {
    auto t = blob_set(static_cast<std::size_t>(state.range(0)), 4, 3);
    auto spec = rdep::resolve_kernel(rdep::KernelSpec::gaussian(0.0), t.x);
    for (auto _ : state) benchmark::DoNotOptimize(rdep::train_svc(t, spec, 1.0));
}
BENCHMARK(BM_SvcTrain)->Arg(32)->Arg(128);

void BM_MorphUnitTrain(benchmark::State& state) {
    auto t = blob_set(static_cast<std::size_t>(state.range(0)), 2, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            rdep::train_morph_unit(rdep::MorphKind::Dilation, t, rdep::CcpConfig{}));
}
BENCHMARK(BM_MorphUnitTrain)->Arg(25)->Arg(100);

void BM_SolveLp(benchmark::State& state) {
    // hinge-style program: one slack per sample, free 2-d offset
    std::mt19937_64 rng(5);
    std::size_t m = static_cast<std::size_t>(state.range(0));
    rdep::LinearProgram lp(2 + m);
    lp.set_bounds(0, -1e30, 1e30);
    lp.set_bounds(1, -1e30, 1e30);
    for (std::size_t i = 0; i < m; ++i) {
        lp.set_bounds(2 + i, 0.0, std::numeric_limits<double>::infinity());
        lp.objective[2 + i] = 1.0;
        std::size_t j = rng() % 2;
        lp.add_row({{j, 1.0}, {2 + i, -1.0}},
                   static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0);
    }
    lp.objective[0] = 0.01;
    lp.objective[1] = 0.01;
    for (auto _ : state) benchmark::DoNotOptimize(rdep::solve_lp(lp));
}
BENCHMARK(BM_SolveLp)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
