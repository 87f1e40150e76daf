// Command-line front end: build and validate machines, generate and verify
// routing tables, run traffic and workload simulations, and print the
// headline model numbers.

#include <CLI11.hpp>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "swallow/core_model.hpp"
#include "swallow/energy_model.hpp"
#include "swallow/network_sim.hpp"
#include "swallow/routing.hpp"
#include "swallow/topology.hpp"
#include "swallow/workloads.hpp"

namespace fs = std::filesystem;
using namespace swallow;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::string format = "txt";
    MachineConfig cfg;
    std::string cfg_hash;
    IniFile ini;  // raw config for workload keys
    bool have_ini = false;
};

std::string stamp(const GlobalOpts& g) {
    return "# config=" + g.cfg_hash + " seed=" + std::to_string(g.seed) + "\n";
}

void write_file(const GlobalOpts& g, const std::string& name, const std::string& body) {
    fs::create_directories(g.out_dir);
    std::ofstream out(fs::path(g.out_dir) / name, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + name + " under " + g.out_dir);
    out << stamp(g) << body;
}

std::string slurp(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(std::string("cannot open ") + what + ": " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string body = buf.str();
    if (body.rfind("# ", 0) == 0) body.erase(0, body.find('\n') + 1);
    return body;
}

void load_config(GlobalOpts& g) {
    if (g.config_path.empty()) {
        if (const char* env = std::getenv("SWALLOW_CONFIG")) g.config_path = env;
    }
    if (!g.config_path.empty()) {
        g.ini = IniFile::parse_file(g.config_path);
        g.cfg = MachineConfig::from_ini(g.ini);
        g.have_ini = true;
    } else {
        g.cfg = MachineConfig::defaults();
    }
    g.cfg_hash = hex64(g.cfg.hash());
}

struct BuiltMachine {
    Topology t;
    AddressMap addrs;
    std::vector<RoutingTable> tables;
};

BuiltMachine build_machine(const GlobalOpts& g,
                           RoutingStrategy s = RoutingStrategy::VerticalFirst) {
    BuiltMachine m{build_topology(g.cfg.slices_x, g.cfg.slices_y, g.cfg), {}, {}};
    m.addrs = assign_addresses(m.t);
    m.tables = generate_tables(m.t, m.addrs, s);
    return m;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int cmd_topo(GlobalOpts& g) {
    Topology t = build_topology(g.cfg.slices_x, g.cfg.slices_y, g.cfg);
    ValidationReport rep = validate_topology(t);
    write_file(g, "topology.csv", t.adjacency_csv());
    write_file(g, "topology.dot", t.graph_dot());
    write_file(g, "validation.txt", rep.text());
    if (g.format == "csv")
        std::cout << t.adjacency_csv();
    else
        std::cout << "built " << t.core_count() << " cores on " << t.device_count()
                  << " devices (" << t.slice_count() << " slices), " << t.links.size()
                  << " links\n"
                  << rep.text();
    return rep.empty() ? 0 : 1;
}

int cmd_route(GlobalOpts& g, const std::string& strategy, const std::string& verify_only) {
    RoutingStrategy s = RoutingStrategy::VerticalFirst;
    if (strategy == "naive-xy")
        s = RoutingStrategy::NaiveXY;
    else if (strategy != "vertical-first")
        throw std::invalid_argument("unknown strategy: " + strategy);

    BuiltMachine m = build_machine(g, s);
    if (!verify_only.empty())
        m.tables = tables_from_csv(m.t, slurp(verify_only, "tables file"));
    VerificationReport rep = verify_tables(m.t, m.addrs, m.tables);
    write_file(g, "tables.csv", tables_csv(m.t, m.addrs, m.tables));
    write_file(g, "verify.txt", rep.text());
    write_file(g, "route_load.csv", rep.histogram_csv(m.t));
    std::cout << (g.format == "csv" ? rep.histogram_csv(m.t) : rep.text());
    return rep.deliverable && rep.cdg_acyclic ? 0 : 1;
}

int cmd_sim(GlobalOpts& g, const std::string& traffic_path, const std::string& tables_path,
            SimTime horizon) {
    BuiltMachine m = build_machine(g);
    if (!tables_path.empty())
        m.tables = tables_from_csv(m.t, slurp(tables_path, "tables file"));
    auto traffic = traffic_from_csv(slurp(traffic_path, "traffic file"));

    Simulator sim(m.t, m.addrs, m.tables, SimParams::from_config(g.cfg));
    SimReport rep = sim.run(traffic, horizon);
    CommMetrics cg = swallow_metrics(m.t, TrafficPattern::Congested, g.cfg);
    CommMetrics dj = swallow_metrics(m.t, TrafficPattern::DisjointPaths, g.cfg);
    std::ostringstream summary;
    summary << rep.summary_text() << "machine e/c: " << num(ratio_e_over_c(cg))
            << "\nmachine E/C: " << num(ratio_E_over_C(dj)) << ".."
            << num(ratio_E_over_C(cg)) << "\n";
    write_file(g, "flows.csv", rep.flows_csv());
    write_file(g, "links.csv", rep.links_csv(m.t));
    write_file(g, "nodes.csv", rep.nodes_csv(m.t));
    write_file(g, "summary.txt", summary.str());
    std::cout << (g.format == "csv" ? rep.flows_csv() : summary.str());
    return rep.conservation_ok() ? 0 : 1;
}

int cmd_workload(GlobalOpts& g, const std::string& kind, bool simulate) {
    BuiltMachine m = build_machine(g);
    SimParams sp = SimParams::from_config(g.cfg);

    // Curve emitters sit outside the four simulated scenarios.
    if (kind == "memory-scaling") {
        write_file(g, "memory_scaling.csv", memory_scaling_csv(1 << 20));
        std::cout << "wrote memory_scaling.csv\n";
        return 0;
    }
    if (kind == "neuron-scaling") {
        write_file(g, "neuron_scaling.csv",
                   neuron_scaling_csv(m.t.core_count(), g.cfg.memory, g.cfg.neuron));
        NeuronScaling s = neuron_scaling(m.t.core_count(), g.cfg.memory, g.cfg.neuron);
        std::cout << "max population on " << m.t.core_count()
                  << " cores: " << s.max_neurons << "\n";
        return 0;
    }

    WorkloadSpec spec = g.have_ini ? parse_workload(g.ini) : WorkloadSpec{};
    if (!kind.empty()) {
        // The flag overrides the config's kind.
        IniFile override = IniFile::parse_string("[workload]\nkind = " + kind + "\n");
        spec.kind = parse_workload(override).kind;
    }
    validate_workload(spec, m.t, g.cfg.memory, g.cfg.neuron);

    switch (spec.kind) {
        case WorkloadKind::FarmerWorker: {
            FarmerWorkerResult r = gen_farmer_worker(m.t, m.addrs, m.tables, spec.farmer);
            std::ostringstream placement;
            placement << "role,core\ncoordinator," << r.coordinator << "\n";
            for (int w : r.workers) placement << "worker," << w << "\n";
            write_file(g, "placement.csv", placement.str());
            write_file(g, "traffic.csv", traffic_to_csv(r.traffic));
            std::cout << "farmer-worker: " << r.workers.size()
                      << " workers, hub bottleneck: " << (r.hub_bottleneck ? "yes" : "no")
                      << "\n";
            if (simulate) {
                Simulator sim(m.t, m.addrs, m.tables, sp);
                SimReport rep = sim.run(r.traffic);
                write_file(g, "flows.csv", rep.flows_csv());
                write_file(g, "summary.txt", rep.summary_text());
                std::cout << rep.summary_text();
            }
            return 0;
        }
        case WorkloadKind::Pipeline: {
            PipelineResult r = gen_pipeline(m.t, m.addrs, m.tables, spec.pipeline);
            std::ostringstream placement;
            placement << "stage,core\n";
            for (size_t i = 0; i < r.stage_cores.size(); ++i)
                placement << i << "," << r.stage_cores[i] << "\n";
            write_file(g, "placement.csv", placement.str());
            write_file(g, "traffic.csv", traffic_to_csv(r.traffic));
            std::cout << "pipeline: " << spec.pipeline.stages << " stages, predicted ceiling "
                      << num(r.predicted_throughput_bits_s / 1e6) << " Mbit/s\n";
            if (simulate) {
                Simulator sim(m.t, m.addrs, m.tables, sp);
                SimReport rep = sim.run(r.traffic);
                write_file(g, "flows.csv", rep.flows_csv());
                write_file(g, "summary.txt", rep.summary_text());
                std::cout << rep.summary_text();
            }
            return 0;
        }
        case WorkloadKind::NeuronSim: {
            std::vector<StimulusEvent> stim = spec.stimulus;
            if (stim.empty()) stim.push_back({0, 0, 1000.0});
            NeuronSimResult r = run_neuron_sim(spec.neurons, spec.steps, m.t, m.addrs,
                                               m.tables, sp, g.cfg.memory, g.cfg.neuron,
                                               stim, g.seed);
            write_file(g, "spikes.csv", r.spike_log_csv());
            write_file(g, "flows.csv", r.report.flows_csv());
            write_file(g, "summary.txt", r.report.summary_text());
            std::cout << "neuron sim: " << r.spike_log.size() << " spikes, "
                      << r.multicast_messages << " multicast messages\n";
            return 0;
        }
        case WorkloadKind::SharedMemory: {
            int client = spec.client_core < 0 ? m.t.core_count() - 1 : spec.client_core;
            SharedMemoryMap map = shared_mem_map(spec.controllers, spec.total_bytes);
            std::vector<SharedMemOp> trace;
            if (!spec.trace_path.empty()) {
                trace = shared_trace_from_csv(slurp(spec.trace_path, "trace file"));
            } else {
                std::mt19937_64 rng(g.seed);
                for (int i = 0; i < 64; ++i)
                    trace.push_back(
                        {i * 2000, 'R', static_cast<long>(rng() % spec.total_bytes), 32});
            }
            SharedMemResult r =
                run_shared_mem(map, trace, client, m.t, m.addrs, m.tables, sp);
            write_file(g, "latency_histogram.csv", r.histogram_csv());
            write_file(g, "flows.csv", r.report.flows_csv());
            write_file(g, "summary.txt", r.report.summary_text());
            std::cout << "shared memory: " << trace.size() << " ops, mean latency "
                      << num(r.mean_latency_ns) << " ns, aggregate "
                      << num(r.aggregate_bits_s / 1e6) << " Mbit/s\n";
            return 0;
        }
    }
    return 2;
}

int cmd_energy(GlobalOpts& g, const std::string& traffic_path, SimTime horizon) {
    BuiltMachine m = build_machine(g);
    std::vector<TrafficEntry> traffic;
    if (!traffic_path.empty()) traffic = traffic_from_csv(slurp(traffic_path, "traffic file"));
    Simulator sim(m.t, m.addrs, m.tables, SimParams::from_config(g.cfg));
    SimReport rep = sim.run(traffic, horizon > 0 ? horizon : 1'000'000'000);
    std::vector<CoreLoad> loads(m.t.core_count(), CoreLoad::Idle);
    EnergyBreakdown e = run_energy(rep, m.t, loads, g.cfg.switch_clock_mhz, g.cfg);
    write_file(g, "energy.csv", e.csv());
    std::cout << e.csv();
    return 0;
}

int cmd_paper_table(GlobalOpts& g, const std::string& name) {
    std::ostringstream o;
    const PowerProfile& p = g.cfg.power;
    if (name == "ratios") {
        Topology t = build_topology(g.cfg.slices_x, g.cfg.slices_y, g.cfg);
        CommMetrics cg = swallow_metrics(t, TrafficPattern::Congested, g.cfg);
        CommMetrics dj = swallow_metrics(t, TrafficPattern::DisjointPaths, g.cfg);
        o << "communication-to-computation ratios\n"
          << "  node demand e:            " << num(cg.e / 1e9) << " Gbit/s\n"
          << "  node capacity c:          " << num(cg.c / 1e9) << " Gbit/s\n"
          << "  e/c:                      " << num(ratio_e_over_c(cg)) << "\n"
          << "  E/C congested:            " << num(ratio_E_over_C(cg)) << "\n"
          << "  E/C disjoint paths:       " << num(ratio_E_over_C(dj)) << "\n"
          << "comparison (reported figures for contemporary systems)\n"
          << "  system        source_bps  sink_bps  router_bps  e/c    E/C\n"
          << "  this machine  4G          2G        4.5G        2      8-32\n"
          << "  SpiNNaker     6.4M        240M      4G          0.03   0.42\n"
          << "  Centip3De     246G        -         4.46G       -      55\n"
          << "  Tile          96G         1.28T     2.56T       0.075  2.4\n"
          << "  Epiphany      19.2G       2G        51G         0.10   6.02\n";
    } else if (name == "power") {
        o << "core power model (mW)\n"
          << "  loaded line:   " << num(p.static_mw) << " + " << num(p.dyn_mw_per_mhz)
          << "*f\n"
          << "  500 MHz loaded:  model " << num(core_power_mw(500, CoreLoad::ActiveLoaded, p))
          << "  measured 193\n"
          << "  71 MHz loaded:   model " << num(core_power_mw(71, CoreLoad::ActiveLoaded, p))
          << "  measured 65\n"
          << "  500 MHz idle:    " << num(core_power_mw(500, CoreLoad::Idle, p)) << "\n"
          << "  71 MHz idle:     " << num(core_power_mw(71, CoreLoad::Idle, p)) << "\n"
          << "voltage-frequency scaling (0.6 V at 71 MHz to 0.95 V at 500 MHz)\n"
          << "  500 MHz: " << num(dvfs_power_mw(500, p)) << " mW\n"
          << "  71 MHz:  " << num(dvfs_power_mw(71, p)) << " mW\n";
    } else if (name == "energies") {
        o << "per-bit link energies (pJ/bit), implied and measured max power\n"
          << "  class                 pJ/bit   implied_mW  measured_mW\n";
        struct Row {
            LinkClass cls;
            double measured_mw;
        } rows[] = {{LinkClass::OnDie, 1.4},
                    {LinkClass::OnBoardVertical, 13.3},
                    {LinkClass::OnBoardHorizontal, 12.6},
                    {LinkClass::OffBoardCable, 680.0}};
        for (const Row& r : rows) {
            double pj = g.cfg.timing(r.cls).energy_pj_per_bit;
            double implied = pj * 1e-12 * g.cfg.link_rate_bits_s(r.cls) * 1e3;
            o << "  " << to_string(r.cls);
            for (size_t pad = std::strlen(to_string(r.cls)); pad < 22; ++pad) o << ' ';
            o << num(pj) << "     " << num(implied) << "     " << num(r.measured_mw) << "\n";
        }
        o << "note: on-die 1.4 mW at 500 Mbit/s implies 2.8 pJ/bit; the configured\n"
          << "1.63 pJ/bit column is authoritative here, both figures shown.\n";
    } else if (name == "latencies") {
        BuiltMachine m = build_machine(g);
        SimParams sp = SimParams::from_config(g.cfg);
        NodeId a = m.t.node_of(0, 0, Layer::Vertical);
        NodeId b = m.t.node_of(1, 0, Layer::Vertical);
        LatencyEstimate tok = measure_latency(m.t, m.addrs, m.tables, sp, a, b, 1);
        LatencyEstimate word = measure_latency(m.t, m.addrs, m.tables, sp, a, b, 4);
        LatencyEstimate local = measure_latency(m.t, m.addrs, m.tables, sp, a, a, 4);
        o << "core-to-core latency model (sync constant " << num(sp.sync_overhead_ns)
          << " ns)\n"
          << "  token, adjacent packages:  model " << num(tok.ns) << " ns  measured 270\n"
          << "  word, adjacent packages:   model " << num(word.ns) << " ns  measured 360\n"
          << "  word, core-local:          model " << num(local.ns) << " ns  measured 50\n";
    } else if (name == "rates") {
        o << "link data rates\n"
          << "  on-die:    " << num(g.cfg.link_rate_bits_s(LinkClass::OnDie) / 1e6)
          << " Mbit/s (circuit mode ceiling)\n"
          << "  external:  "
          << num(g.cfg.link_rate_bits_s(LinkClass::OnBoardVertical) / 1e6) << " Mbit/s\n"
          << "  packet mode, " << g.cfg.packet_payload_bytes << "-byte payload: "
          << num(static_cast<double>(g.cfg.packet_payload_bytes) /
                 (g.cfg.packet_payload_bytes + 3) *
                 g.cfg.link_rate_bits_s(LinkClass::OnDie) / 1e6)
          << " Mbit/s effective\n";
    } else if (name == "system") {
        SystemPower one = system_power(1, CoreLoad::ActiveLoaded, 500, p);
        SystemPower full = system_power(30, CoreLoad::ActiveLoaded, 500, p);
        o << "system power (fully loaded at 500 MHz)\n"
          << "  per slice: cores " << num(one.cores_w) << " W, wall " << num(one.wall_w)
          << " W\n"
          << "  30 slices: wall " << num(full.wall_w) << " W (measured 134)\n"
          << "node power breakdown: psu " << num(p.psu_fraction * 100) << "%, compute "
          << num(p.compute_fraction * 100) << "%, waste " << num(p.waste_fraction * 100)
          << "%, network " << num(p.network_fraction * 100) << "%\n";
    } else {
        throw std::invalid_argument(
            "unknown table: " + name +
            " (expected ratios|power|energies|latencies|rates|system)");
    }
    std::cout << o.str();
    write_file(g, "table_" + name + ".txt", o.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swallow many-core machine models and simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    GlobalOpts g;
    app.add_option("--config", g.config_path,
                   "machine config file (or SWALLOW_CONFIG env var)");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--seed", g.seed, "seed recorded in outputs and used by generators");
    app.add_option("--format", g.format, "csv or txt")
        ->check(CLI::IsMember({"csv", "txt"}));

    auto* topo = app.add_subcommand("topo", "build and validate the machine graph");

    auto* route = app.add_subcommand("route", "generate and verify routing tables");
    std::string strategy = "vertical-first";
    std::string verify_only;
    route->add_option("--strategy", strategy, "vertical-first or naive-xy");
    route->add_option("--verify-only", verify_only, "re-verify a saved tables csv");

    auto* sim = app.add_subcommand("sim", "run a traffic file through the simulator");
    std::string traffic_path, tables_path;
    SimTime horizon = 0;
    sim->add_option("--traffic", traffic_path, "traffic csv")->required();
    sim->add_option("--tables", tables_path, "saved tables csv (default: generate)");
    sim->add_option("--horizon", horizon, "minimum simulated time, ns");

    auto* workload = app.add_subcommand("workload", "generate and run a workload");
    std::string kind;  // empty: take the kind from the config section
    bool simulate = false;
    workload->add_option("--kind", kind,
                         "farmer|pipeline|neuron|sharedmem|memory-scaling|neuron-scaling");
    workload->add_flag("--simulate", simulate, "also run the generated traffic");

    auto* energy = app.add_subcommand("energy", "energy report for a (possibly empty) run");
    std::string energy_traffic;
    SimTime energy_horizon = 0;
    energy->add_option("--traffic", energy_traffic, "traffic csv");
    energy->add_option("--horizon", energy_horizon, "simulated time, ns");

    auto* table = app.add_subcommand("paper-table", "print a golden number table");
    std::string table_name = "ratios";
    table->add_option("name", table_name, "ratios|power|energies|latencies|rates|system");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        load_config(g);
        if (*topo) return cmd_topo(g);
        if (*route) return cmd_route(g, strategy, verify_only);
        if (*sim) return cmd_sim(g, traffic_path, tables_path, horizon);
        if (*workload) return cmd_workload(g, kind, simulate);
        if (*energy) return cmd_energy(g, energy_traffic, energy_horizon);
        if (*table) return cmd_paper_table(g, table_name);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
