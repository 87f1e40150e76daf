#include <benchmark/benchmark.h>

#include <random>

#include "swallow/network_sim.hpp"

using namespace swallow;

namespace {

struct Fixture {
    Topology t;
    AddressMap addrs;
    std::vector<RoutingTable> tables;
    SimParams params;
    Fixture(int sx, int sy)
        : t(build_topology(sx, sy)),
          addrs(assign_addresses(t)),
          tables(generate_tables(t, addrs)),
          params(SimParams::from_config(MachineConfig::defaults())) {}
};

void BM_PacketStream(benchmark::State& state) {
    Fixture f(1, 1);
    int src = f.t.core_index(NodeId{0, 3, 0});
    int dst = f.t.core_index(NodeId{0, 3, 1});
    std::vector<TrafficEntry> tr;
    for (long i = 0; i < state.range(0); ++i)
        tr.push_back({0, src, dst, 20, ChannelMode::Packet});
    for (auto _ : state) {
        Simulator sim(f.t, f.addrs, f.tables, f.params);
        SimReport r = sim.run(tr);
        benchmark::DoNotOptimize(r.delivered_bytes);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 24);  // tokens
}
BENCHMARK(BM_PacketStream)->Arg(50)->Arg(500);

void BM_RandomTraffic(benchmark::State& state) {
    Fixture f(2, 2);
    std::mt19937_64 rng(1);
    std::vector<TrafficEntry> tr;
    for (long i = 0; i < state.range(0); ++i)
        tr.push_back({static_cast<SimTime>(rng() % 50000),
                      static_cast<int>(rng() % f.t.core_count()),
                      static_cast<int>(rng() % f.t.core_count()),
                      static_cast<long>(4 + rng() % 60), ChannelMode::Packet});
    for (auto _ : state) {
        Simulator sim(f.t, f.addrs, f.tables, f.params);
        SimReport r = sim.run(tr);
        benchmark::DoNotOptimize(r.delivered_bytes);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RandomTraffic)->Arg(100)->Arg(400);

void BM_BulkCircuit(benchmark::State& state) {
    Fixture f(1, 2);
    int src = f.t.core_index(f.t.node_of(3, 0, Layer::Vertical));
    int dst = f.t.core_index(f.t.node_of(4, 0, Layer::Vertical));
    std::vector<TrafficEntry> tr = {{0, src, dst, 1, ChannelMode::Circuit},
                                    {0, src, dst, state.range(0), ChannelMode::Circuit}};
    for (auto _ : state) {
        Simulator sim(f.t, f.addrs, f.tables, f.params);
        SimReport r = sim.run(tr);
        benchmark::DoNotOptimize(r.delivered_bytes);
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BulkCircuit)->Arg(1'000'000)->Arg(125'000'000);

}  // namespace

BENCHMARK_MAIN();
