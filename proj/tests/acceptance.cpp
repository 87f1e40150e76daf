// Acceptance suite: exercises each headline behaviour end to end and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "swallow/core_model.hpp"
#include "swallow/energy_model.hpp"
#include "swallow/network_sim.hpp"
#include "swallow/routing.hpp"
#include "swallow/topology.hpp"
#include "swallow/workloads.hpp"

using namespace swallow;

namespace {

int failures = 0;

void criterion(int n, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s  %2d: %s%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

bool within(double v, double target, double rel) {
    return std::abs(v - target) <= rel * std::abs(target);
}

struct Machine {
    Topology t;
    AddressMap addrs;
    std::vector<RoutingTable> tables;
    SimParams params;
    explicit Machine(int sx, int sy)
        : t(build_topology(sx, sy)),
          addrs(assign_addresses(t)),
          tables(generate_tables(t, addrs)),
          params(SimParams::from_config(MachineConfig::defaults())) {}
    SimReport run(const std::vector<TrafficEntry>& tr, SimTime horizon = 0) {
        Simulator s(t, addrs, tables, params);
        return s.run(tr, horizon);
    }
};

const FlowStats& flow_between(const SimReport& r, int src, int dst) {
    static FlowStats none;
    for (const auto& f : r.flows)
        if (f.src == src && f.dst == dst) return f;
    return none;
}

void c1_ratios() {
    Topology t = build_topology(5, 6);
    CommMetrics cg = swallow_metrics(t, TrafficPattern::Congested);
    CommMetrics dj = swallow_metrics(t, TrafficPattern::DisjointPaths);
    bool ok = ratio_e_over_c(cg) == 2.0 && ratio_E_over_C(cg) == 32.0 &&
              ratio_E_over_C(dj) == 8.0;
    char d[96];
    std::snprintf(d, sizeof d, "e/c=%g E/C=%g/%g", ratio_e_over_c(cg), ratio_E_over_C(cg),
                  ratio_E_over_C(dj));
    criterion(1, "communication ratios exact (e/c=2, E/C=32 congested, 8 disjoint)", ok, d);
}

void c2_rates() {
    Machine m(1, 1);
    int p0 = m.t.core_index(NodeId{0, 3, 0});
    int p1 = m.t.core_index(NodeId{0, 3, 1});
    int v0 = m.t.core_index(m.t.node_of(0, 0, Layer::Vertical));
    int v1 = m.t.core_index(m.t.node_of(1, 0, Layer::Vertical));

    // >= 10^3 tokens on every measured path.
    SimReport internal = m.run({{0, p0, p1, 1, ChannelMode::Circuit},
                                {0, p0, p1, 1500, ChannelMode::Circuit}});
    double r_int = flow_between(internal, p0, p1).steady_rate_bits_s();

    SimReport external = m.run({{0, v0, v1, 1, ChannelMode::Circuit},
                                {0, v0, v1, 1500, ChannelMode::Circuit}});
    double r_ext = flow_between(external, v0, v1).steady_rate_bits_s();

    std::vector<TrafficEntry> pk;
    for (int i = 0; i < 50; ++i) pk.push_back({0, p0, p1, 20, ChannelMode::Packet});
    SimReport packet = m.run(pk);
    double r_pk = flow_between(packet, p0, p1).steady_rate_bits_s();

    bool ok = within(r_int, 500e6, 1e-9) && within(r_ext, 125e6, 1e-9) &&
              within(r_pk, 435e6, 0.05);
    char d[128];
    std::snprintf(d, sizeof d, "circuit internal %.6g, external %.6g, packet %.4g Mbit/s",
                  r_int / 1e6, r_ext / 1e6, r_pk / 1e6);
    criterion(2, "idle-path throughput 500 / 125 / 435+-5% Mbit/s", ok, d);
}

void c3_latencies() {
    Machine m(1, 1);
    NodeId a = m.t.node_of(0, 0, Layer::Vertical);
    NodeId b = m.t.node_of(1, 0, Layer::Vertical);
    double tok = measure_latency(m.t, m.addrs, m.tables, m.params, a, b, 1).ns;
    double word = measure_latency(m.t, m.addrs, m.tables, m.params, a, b, 4).ns;
    double local = measure_latency(m.t, m.addrs, m.tables, m.params, a, a, 4).ns;
    bool ok = within(tok, 270, 0.10) && within(word, 360, 0.10) && within(local, 50, 0.10);
    char d[128];
    std::snprintf(d, sizeof d, "token %.0f/270, word %.0f/360, local %.0f/50 ns (sync %g)",
                  tok, word, local, m.params.sync_overhead_ns);
    criterion(3, "latency triple within 10% under one calibration constant", ok, d);
}

void c4_power() {
    double p500 = core_power_mw(500, CoreLoad::ActiveLoaded);
    double p71 = core_power_mw(71, CoreLoad::ActiveLoaded);
    double i500 = core_power_mw(500, CoreLoad::Idle);
    double i71 = core_power_mw(71, CoreLoad::Idle);
    double sys30 = system_power(30, CoreLoad::ActiveLoaded).wall_w;
    bool ok = within(p500, 193, 0.05) && within(p71, 65, 0.05) && i500 == 113.0 &&
              i71 == 50.0 && within(sys30, 134, 0.10);
    char d[128];
    std::snprintf(d, sizeof d, "loaded %.1f/%.1f mW, idle %.0f/%.0f mW, 30 slices %.1f W",
                  p500, p71, i500, i71, sys30);
    criterion(4, "core power within 5%, idle endpoints exact, system 134 W within 10%",
              ok, d);
}

void c5_energy_attribution() {
    Machine m(1, 2);
    int src = m.t.core_index(m.t.node_of(3, 0, Layer::Vertical));
    int dst = m.t.core_index(m.t.node_of(4, 0, Layer::Vertical));  // off-board crossing
    std::vector<CoreLoad> idle(m.t.core_count(), CoreLoad::Idle);
    const SimTime horizon = 10'000'000'000;

    SimReport base = m.run({}, horizon);
    SimReport moved = m.run({{0, src, dst, 1, ChannelMode::Circuit},
                             {0, src, dst, 125'000'000, ChannelMode::Circuit}},
                            horizon);
    EnergyBreakdown e0 = run_energy(base, m.t, idle, 500.0);
    EnergyBreakdown e1 = run_energy(moved, m.t, idle, 500.0);
    double delta = e1.total_j - e0.total_j;
    // 10^9 bits at the Table-value 5440 pJ/bit: 5.440 J.
    bool ok = within(delta, 5.440, 0.001) && moved.delivered_bytes == 125'000'001;
    char d[96];
    std::snprintf(d, sizeof d, "delta %.6f J over baseline (expect 5.440)", delta);
    criterion(5, "one Gbit over an off-board link adds its per-bit table energy +-0.1%",
              ok, d);
}

void c6_routing() {
    auto start = std::chrono::steady_clock::now();
    Machine m(5, 6);
    VerificationReport good = verify_tables(m.t, m.addrs, m.tables);
    auto naive_tables = generate_tables(m.t, m.addrs, RoutingStrategy::NaiveXY);
    VerificationReport naive = verify_tables(m.t, m.addrs, naive_tables);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    bool ok = good.deliverable && good.max_layer_transitions == 2 && good.cdg_acyclic &&
              !naive.deliverable && secs < 60.0;
    char d[160];
    std::snprintf(d, sizeof d,
                  "480 cores: deliverable=%d transitions=%d acyclic=%d; naive "
                  "deliverable=%d (%ld pairs failed); %.1f s",
                  good.deliverable, good.max_layer_transitions, good.cdg_acyclic,
                  naive.deliverable, naive.undeliverable_pairs, secs);
    criterion(6, "480-core tables verified; naive X-Y demonstrably not connected", ok, d);
}

void c7_threads() {
    double per[9] = {0, 125, 125, 125, 125, 100, 500.0 / 6, 500.0 / 7, 62.5};
    double agg[9] = {0, 125, 250, 375, 500, 500, 500, 500, 500};
    bool ok = true;
    for (int n = 1; n <= 8; ++n) {
        ThreadThroughput t = thread_throughput({500.0, n});
        ok = ok && std::abs(t.per_thread_mips - per[n]) < 1e-9 &&
             std::abs(t.aggregate_mips - agg[n]) < 1e-9;
    }
    criterion(7, "thread throughput piecewise rule at every count 1..8", ok);
}

void c8_neurons() {
    MemoryModel mem;
    NeuronAccounting acct;
    bool cal = neuron_capacity(1, mem, acct) == 191 && neuron_capacity(8, mem, acct) == 191;

    // Brute-force agreement for every population up to 1e5.
    long avail = mem.total_bytes - mem.reserved_code - mem.reserved_os -
                 acct.shared_code_bytes;
    long base = acct.stack_bytes_per_copy + acct.state_bytes + acct.event_buffer_bytes;
    bool oracle_ok = true;
    for (long n = 1; n <= 100000 && oracle_ok; ++n) {
        long per = base + (n + 7) / 8;
        long k = 0;
        while ((k + 1) * per <= avail) ++k;
        if (k != neuron_capacity(n, mem, acct)) oracle_ok = false;
    }

    // Quadratic regime: required cores / N^2 settles toward 1/(8*avail).
    double limit = 1.0 / (8.0 * static_cast<double>(avail));
    bool quad = true;
    double prev_err = 1e18;
    for (long n : {200000L, 400000L, 530000L}) {
        long p = NeuronScaling::cores_required(n, mem, acct);
        double ratio = static_cast<double>(p) / (static_cast<double>(n) * n);
        quad = quad && ratio >= limit * 0.99 && ratio <= limit * 1.6 &&
               std::abs(ratio - limit) <= prev_err * 1.05;
        prev_err = std::abs(ratio - limit);
    }

    NeuronScaling anchor = neuron_scaling(100000, mem, acct);
    NeuronScaling machine = neuron_scaling(480, mem, acct);
    bool ok = cal && oracle_ok && quad;
    char d[160];
    std::snprintf(d, sizeof d,
                  "capacity(small N)=%ld; anchor: reported 100000 neurons on 100000 "
                  "cores, model %ld; 480 cores -> %ld",
                  neuron_capacity(1, mem, acct), anchor.max_neurons, machine.max_neurons);
    criterion(8, "191 neurons/core calibration, oracle agreement to 1e5, quadratic regime",
              ok, d);
}

void c9_properties() {
    Machine m(2, 2);
    std::uint64_t base_seed = 20260809;
    bool conservation = true, determinism = true, monotonic = true, credits = true;

    for (int trial = 0; trial < 100; ++trial) {
        std::mt19937_64 rng(base_seed + trial);
        std::vector<TrafficEntry> tr;
        int flows = 8 + static_cast<int>(rng() % 12);
        for (int f = 0; f < flows; ++f) {
            int s = static_cast<int>(rng() % m.t.core_count());
            int d = static_cast<int>(rng() % m.t.core_count());
            int packets = 1 + static_cast<int>(rng() % 4);
            long bytes = 4 + static_cast<long>(rng() % 60);
            SimTime t0 = static_cast<SimTime>(rng() % 30000);
            for (int k = 0; k < packets; ++k)
                tr.push_back({t0 + k * 2000, s, d, bytes, ChannelMode::Packet});
        }
        SimReport r1 = m.run(tr);
        SimReport r2 = m.run(tr);
        conservation = conservation && r1.conservation_ok();
        determinism = determinism && r1.flows_csv() == r2.flows_csv() &&
                      r1.links_csv(m.t) == r2.links_csv(m.t);
        credits = credits && r1.max_buffer_occupancy <= m.params.credit_tokens;

        // Add one flow; nobody else may speed up. Throughput is measured over
        // the run (delivered bytes per simulated makespan): individual
        // completion instants can ripple earlier through arbitration, but a
        // flow's share of the run never improves with more traffic.
        std::vector<TrafficEntry> more = tr;
        int s = static_cast<int>(rng() % m.t.core_count());
        int d = static_cast<int>(rng() % m.t.core_count());
        more.push_back({static_cast<SimTime>(rng() % 30000), s, d,
                        static_cast<long>(8 + rng() % 56), ChannelMode::Packet});
        SimReport r3 = m.run(more);
        for (const auto& f1 : r1.flows) {
            const FlowStats& f3 = flow_between(r3, f1.src, f1.dst);
            if (f1.delivered_bytes == 0 || f3.messages != f1.messages) continue;
            double rate1 = static_cast<double>(f1.delivered_bytes) / r1.wall_ns;
            double rate3 = static_cast<double>(f3.delivered_bytes) / r3.wall_ns;
            if (rate3 > rate1 * (1.0 + 1e-9)) monotonic = false;
        }
    }

    bool locate_ok = true;
    for (int n : {1, 2, 3, 16}) {
        SharedMemoryMap map = shared_mem_map(n, 65536);
        std::set<std::pair<int, long>> seen;
        for (long a = 0; a < 65536; ++a) {
            MemoryLocation loc = locate(map, a);
            if (loc.controller < 0 || loc.controller >= n ||
                loc.offset >= map.capacity_of(loc.controller))
                locate_ok = false;
            seen.insert({loc.controller, loc.offset});
        }
        if (static_cast<long>(seen.size()) != 65536) locate_ok = false;
    }

    bool ok = conservation && determinism && monotonic && credits && locate_ok;
    char d[160];
    std::snprintf(d, sizeof d,
                  "conservation=%d determinism=%d monotonicity=%d credits=%d "
                  "locate-bijection=%d",
                  conservation, determinism, monotonic, credits, locate_ok);
    criterion(9, "property suites: 100 seeded traffic sets + exhaustive locate", ok, d);
}

}  // namespace

int main() {
    c1_ratios();
    c2_rates();
    c3_latencies();
    c4_power();
    c5_energy_attribution();
    c6_routing();
    c7_threads();
    c8_neurons();
    c9_properties();
    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures;
}
