#include <benchmark/benchmark.h>

#include "swallow/routing.hpp"

using namespace swallow;

namespace {

void BM_BuildTopology(benchmark::State& state) {
    int slices = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Topology t = build_topology(slices, slices);
        benchmark::DoNotOptimize(t.links.data());
    }
}
BENCHMARK(BM_BuildTopology)->Arg(1)->Arg(3)->Arg(6);

void BM_GenerateTables(benchmark::State& state) {
    Topology t = build_topology(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0)));
    AddressMap addrs = assign_addresses(t);
    for (auto _ : state) {
        auto tables = generate_tables(t, addrs);
        benchmark::DoNotOptimize(tables.data());
    }
    state.SetItemsProcessed(state.iterations() * t.core_count());
}
BENCHMARK(BM_GenerateTables)->Arg(1)->Arg(3)->Arg(6);

void BM_RouteAllPairs(benchmark::State& state) {
    Topology t = build_topology(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0)));
    AddressMap addrs = assign_addresses(t);
    auto tables = generate_tables(t, addrs);
    for (auto _ : state) {
        long hops = 0;
        for (int s = 0; s < t.core_count(); ++s)
            for (int d = 0; d < t.core_count(); ++d)
                if (s != d)
                    hops += static_cast<long>(
                        route(t, addrs, tables, t.node_at(s), t.node_at(d)).hops.size());
        benchmark::DoNotOptimize(hops);
    }
    state.SetItemsProcessed(state.iterations() * t.core_count() *
                            (t.core_count() - 1));
}
BENCHMARK(BM_RouteAllPairs)->Arg(1)->Arg(2)->Arg(4);

void BM_VerifyTables480(benchmark::State& state) {
    Topology t = build_topology(5, 6);
    AddressMap addrs = assign_addresses(t);
    auto tables = generate_tables(t, addrs);
    for (auto _ : state) {
        VerificationReport rep = verify_tables(t, addrs, tables);
        benchmark::DoNotOptimize(rep.deliverable);
    }
}
BENCHMARK(BM_VerifyTables480)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
