// Serial reference vs OpenMP kernel timings.

#include "ugspec/generators.hpp"
#include "ugspec/label_extended.hpp"
#include "ugspec/oracle.hpp"
#include "ugspec/recover.hpp"
#include "ugspec/rng.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <vector>

using namespace ugspec;

namespace {

// Circulant 4-regular skeleton: no eigendecomposition, so large n stays cheap.
const UGInstance &noisy_instance(std::size_t n, std::size_t k) {
    static std::map<std::pair<std::size_t, std::size_t>, UGInstance> cache;
    auto it = cache.find({n, k});
    if (it == cache.end()) {
        GraphSkeleton g;
        g.n = n;
        for (Vertex u = 0; u < n; ++u) {
            g.edges.push_back({u, static_cast<Vertex>((u + 1) % n), 1.0});
            g.edges.push_back({u, static_cast<Vertex>((u + 7) % n), 1.0});
        }
        const auto L = random_labeling(n, k, 17);
        const auto pi = planted_instance({g, k, L, ConstraintFamily::general, 18});
        it = cache.emplace(std::pair{n, k}, perturb(pi.inst, L, 0.2, 19)).first;
    }
    return it->second;
}

std::vector<double> random_vectors(std::size_t count, std::size_t dim) {
    Rng rng(5);
    std::vector<double> v(count * dim);
    for (auto &x : v)
        x = rng.normal();
    return v;
}

OracleProblem whole_instance_problem(const UGInstance &inst) {
    OracleProblem p;
    p.k = inst.k();
    p.vars = inst.n();
    for (const auto &e : inst.edges()) {
        p.eu.push_back(static_cast<std::uint32_t>(e.u));
        p.ev.push_back(static_cast<std::uint32_t>(e.v));
        p.ew.push_back(e.weight);
        p.images.insert(p.images.end(), e.perm.images().begin(), e.perm.images().end());
        p.total += e.weight;
    }
    return p;
}

void BM_candidates_serial(benchmark::State &state) {
    const CompiledInstance ci(noisy_instance(200, 4));
    const std::size_t count = 4096;
    const auto cand = random_vectors(count, 800);
    std::vector<double> out(count);
    for (auto _ : state) {
        evaluate_candidates_serial(ci, cand, count, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}

void BM_candidates_omp(benchmark::State &state) {
    const CompiledInstance ci(noisy_instance(200, 4));
    const std::size_t count = 4096;
    const auto cand = random_vectors(count, 800);
    std::vector<double> out(count);
    for (auto _ : state) {
        evaluate_candidates_omp(ci, cand, count, out, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}

void BM_oracle_serial(benchmark::State &state) {
    const auto p = whole_instance_problem(noisy_instance(12, 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_search_serial(p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.count()));
}

void BM_oracle_omp(benchmark::State &state) {
    const auto p = whole_instance_problem(noisy_instance(12, 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_search_omp(p, static_cast<int>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.count()));
}

void BM_matvec_serial(benchmark::State &state) {
    const LabelExtendedOperator op(noisy_instance(2000, 8));
    const auto x = random_vectors(1, op.dim());
    std::vector<double> y(op.dim());
    for (auto _ : state) {
        op.apply_serial(x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_matvec_omp(benchmark::State &state) {
    const LabelExtendedOperator op(noisy_instance(2000, 8));
    const auto x = random_vectors(1, op.dim());
    std::vector<double> y(op.dim());
    for (auto _ : state) {
        op.apply_omp(x, y, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(y.data());
    }
}

} // namespace

BENCHMARK(BM_candidates_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_candidates_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matvec_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_matvec_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
