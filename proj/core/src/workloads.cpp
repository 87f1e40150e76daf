#include "swallow/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace swallow {

const char* to_string(WorkloadKind k) {
    switch (k) {
        case WorkloadKind::FarmerWorker: return "farmer";
        case WorkloadKind::Pipeline: return "pipeline";
        case WorkloadKind::NeuronSim: return "neuron";
        case WorkloadKind::SharedMemory: return "sharedmem";
    }
    return "?";
}

namespace {

long route_hops(const Topology& t, const AddressMap& addrs,
                const std::vector<RoutingTable>& tables, int src, int dst) {
    return static_cast<long>(
        route(t, addrs, tables, t.node_at(src), t.node_at(dst)).hops.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// Farmer-worker

FarmerWorkerResult gen_farmer_worker(const Topology& t, const AddressMap& addrs,
                                     const std::vector<RoutingTable>& tables,
                                     const FarmerWorkerSpec& spec) {
    if (spec.workers < 1) throw std::invalid_argument("at least one worker");
    if (spec.workers + 1 > t.core_count())
        throw std::invalid_argument("workers + coordinator exceed " +
                                    std::to_string(t.core_count()) + " cores");

    FarmerWorkerResult res;
    // Coordinator: vertical-layer core of the central device.
    int mid = t.device_index(t.device_rows() / 2, t.device_cols() / 2);
    res.coordinator =
        t.core_index(t.node_of(t.device_row(mid), t.device_col(mid), Layer::Vertical));

    // Workers: nearest first, by table-route hop count.
    std::vector<std::pair<long, int>> by_dist;
    for (int i = 0; i < t.core_count(); ++i) {
        if (i == res.coordinator) continue;
        by_dist.emplace_back(route_hops(t, addrs, tables, res.coordinator, i), i);
    }
    std::sort(by_dist.begin(), by_dist.end());
    for (int w = 0; w < spec.workers; ++w) res.workers.push_back(by_dist[w].second);

    const SimTime epoch = 100'000;
    for (int r = 0; r < spec.rounds; ++r) {
        for (int w : res.workers)
            res.traffic.push_back(
                {r * epoch, res.coordinator, w, spec.scatter_bytes, spec.mode});
        for (int w : res.workers)
            res.traffic.push_back(
                {r * epoch + epoch / 2, w, res.coordinator, spec.gather_bytes, spec.mode});
    }

    // Static route-load analysis: does the hub concentrate the traffic?
    std::vector<long> load(t.links.size(), 0);
    std::set<int> used;
    auto add_route = [&](int a, int b) {
        for (const Hop& h : route(t, addrs, tables, t.node_at(a), t.node_at(b)).hops) {
            load[h.link] += spec.rounds;
            used.insert(h.link);
        }
    };
    for (int w : res.workers) {
        add_route(res.coordinator, w);
        add_route(w, res.coordinator);
    }
    res.links_used.assign(used.begin(), used.end());

    std::set<int> hub_links;
    NodeId coord = t.node_at(res.coordinator);
    for (int li : t.link_indices_of(coord)) hub_links.insert(li);
    NodeId partner = coord;
    partner.core = 1 - partner.core;
    for (int li : t.link_indices_of(partner)) hub_links.insert(li);
    for (size_t li = 0; li < load.size(); ++li) {
        if (load[li] == 0) continue;
        if (hub_links.count(static_cast<int>(li)))
            res.max_coordinator_link_load = std::max(res.max_coordinator_link_load, load[li]);
        else
            res.max_other_link_load = std::max(res.max_other_link_load, load[li]);
    }
    res.hub_bottleneck = spec.workers > 4 &&
                         res.max_coordinator_link_load >= res.max_other_link_load;
    return res;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

// Chain with unit-hop consecutive pairs: along each device row the horizontal
// cores form a rail entered and left through the row ends' vertical cores;
// rows are stitched with one vertical hop, snaking left-right.
std::vector<int> pipeline_chain(const Topology& t) {
    std::vector<int> chain;
    const int R = t.device_rows(), C = t.device_cols();
    for (int r = 0; r < R; ++r) {
        bool ltr = r % 2 == 0;
        int c_in = ltr ? 0 : C - 1;
        int c_out = ltr ? C - 1 : 0;
        chain.push_back(t.core_index(t.node_of(r, c_in, Layer::Vertical)));
        for (int i = 0; i < C; ++i) {
            int c = ltr ? i : C - 1 - i;
            chain.push_back(t.core_index(t.node_of(r, c, Layer::Horizontal)));
        }
        chain.push_back(t.core_index(t.node_of(r, c_out, Layer::Vertical)));
    }
    // C == 2 covers every core; wider machines leave interior vertical cores
    // for the tail.
    std::vector<char> seen(t.core_count(), 0);
    for (int c : chain) seen[c] = 1;
    for (int i = 0; i < t.core_count(); ++i)
        if (!seen[i]) chain.push_back(i);
    return chain;
}

}  // namespace

PipelineResult gen_pipeline(const Topology& t, const AddressMap& addrs,
                            const std::vector<RoutingTable>& tables,
                            const PipelineSpec& spec) {
    if (spec.stages < 1) throw std::invalid_argument("at least one stage");
    if (spec.stages > t.core_count())
        throw std::invalid_argument("more stages than cores");

    PipelineResult res;
    std::vector<int> chain = pipeline_chain(t);
    res.stage_cores.assign(chain.begin(), chain.begin() + spec.stages);

    double min_rate = std::numeric_limits<double>::infinity();
    std::set<int> used;
    for (int s = 0; s + 1 < spec.stages; ++s) {
        Route r = route(t, addrs, tables, t.node_at(res.stage_cores[s]),
                        t.node_at(res.stage_cores[s + 1]));
        for (const Hop& h : r.hops) {
            min_rate = std::min(min_rate, t.links[h.link].rate_bits_s);
            used.insert(h.link);
        }
        if (spec.mode == ChannelMode::Circuit) {
            // Open the circuit, then stream.
            res.traffic.push_back(
                {0, res.stage_cores[s], res.stage_cores[s + 1], 1, spec.mode});
            res.traffic.push_back(
                {2000, res.stage_cores[s], res.stage_cores[s + 1], spec.item_bytes, spec.mode});
        } else {
            res.traffic.push_back(
                {0, res.stage_cores[s], res.stage_cores[s + 1], spec.item_bytes, spec.mode});
        }
    }
    res.links_used.assign(used.begin(), used.end());
    res.predicted_throughput_bits_s = spec.stages < 2 ? 0.0 : min_rate;
    return res;
}

// ---------------------------------------------------------------------------
// Memory scaling

double memory_per_task_kb(long cores, long tasks, long bytes_per_core) {
    if (cores < 1) throw std::invalid_argument("at least one core");
    if (tasks < 1 || tasks > cores)
        throw std::invalid_argument("tasks must be in 1..cores");
    return static_cast<double>(bytes_per_core) / 1024.0 * static_cast<double>(cores) /
           static_cast<double>(tasks);
}

std::string memory_scaling_csv(long max_cores, long bytes_per_core) {
    std::ostringstream o;
    o << "cores,single_task_kb,task_per_core_kb,log_tasks,log_tasks_kb\n";
    char buf[64];
    for (long p = 16; p <= max_cores; p *= 2) {
        long log_tasks = std::max<long>(1, std::lround(std::log2(static_cast<double>(p))));
        o << p << ",";
        std::snprintf(buf, sizeof buf, "%.9g", memory_per_task_kb(p, 1, bytes_per_core));
        o << buf << ",";
        std::snprintf(buf, sizeof buf, "%.9g", memory_per_task_kb(p, p, bytes_per_core));
        o << buf << "," << log_tasks << ",";
        std::snprintf(buf, sizeof buf, "%.9g",
                      memory_per_task_kb(p, std::min(log_tasks, p), bytes_per_core));
        o << buf << "\n";
    }
    return o.str();
}

// ---------------------------------------------------------------------------
// Overlays

OverlayPlan overlay_plan(const std::vector<ProgramRegion>& regions) {
    std::vector<ProgramRegion> sorted = regions;
    std::sort(sorted.begin(), sorted.end(),
              [](const ProgramRegion& a, const ProgramRegion& b) {
                  return a.start_word < b.start_word;
              });
    long prev_end = -1;
    for (const auto& r : sorted) {
        if (r.size_words < 1) throw std::invalid_argument("empty program region");
        if (r.start_word < prev_end)
            throw std::invalid_argument("program regions overlap");
        if (r.overlaid && (r.slot_words < 1 || r.slot_words > r.size_words))
            throw std::invalid_argument("overlay slot must be 1..region size words");
        prev_end = r.start_word + r.size_words;
    }
    OverlayPlan plan;
    plan.regions = sorted;
    for (const auto& r : sorted)
        plan.resident_words += r.overlaid ? r.slot_words : r.size_words;
    return plan;
}

std::vector<OverlayFault> overlay_faults(const OverlayPlan& plan,
                                         const std::vector<long>& access_trace) {
    std::vector<OverlayFault> faults;
    std::vector<long> resident_segment(plan.regions.size(), -1);
    for (size_t i = 0; i < access_trace.size(); ++i) {
        long addr = access_trace[i];
        for (size_t ri = 0; ri < plan.regions.size(); ++ri) {
            const ProgramRegion& r = plan.regions[ri];
            if (addr < r.start_word || addr >= r.start_word + r.size_words) continue;
            if (r.overlaid) {
                long seg = (addr - r.start_word) / r.slot_words;
                if (resident_segment[ri] != seg) {
                    faults.push_back({i, static_cast<int>(ri), seg});
                    resident_segment[ri] = seg;
                }
            }
            break;
        }
    }
    return faults;
}

// ---------------------------------------------------------------------------
// Neuron accounting and scaling

long neuron_capacity(long population, const MemoryModel& mem, const NeuronAccounting& acct) {
    if (population < 1) throw std::invalid_argument("population must be >= 1");
    long avail =
        mem.total_bytes - mem.reserved_code - mem.reserved_os - acct.shared_code_bytes;
    if (avail < 0) return 0;
    long per_copy = acct.stack_bytes_per_copy + acct.state_bytes + acct.event_buffer_bytes +
                    (population + 7) / 8;
    return avail / per_copy;
}

long NeuronScaling::cores_required(long neurons, const MemoryModel& mem,
                                   const NeuronAccounting& acct) {
    long cap = neuron_capacity(neurons, mem, acct);
    if (cap == 0) return -1;
    return (neurons + cap - 1) / cap;
}

NeuronScaling neuron_scaling(long cores, const MemoryModel& mem,
                             const NeuronAccounting& acct) {
    if (cores < 1) throw std::invalid_argument("at least one core");
    NeuronScaling s;
    s.cores = cores;
    long lo = 0, hi = cores * neuron_capacity(1, mem, acct);
    // capacity is nonincreasing in N, so feasibility N <= cores*capacity(N)
    // is monotone: true below the answer, false above.
    while (lo < hi) {
        long mid = lo + (hi - lo + 1) / 2;
        bool ok = mid >= 1 && mid <= cores * neuron_capacity(mid, mem, acct);
        if (ok)
            lo = mid;
        else
            hi = mid - 1;
    }
    s.max_neurons = lo;
    return s;
}

std::string neuron_scaling_csv(long cores, const MemoryModel& mem,
                               const NeuronAccounting& acct) {
    std::ostringstream o;
    o << "neurons_per_core,table_limit_population,cores_required,population_with_cores\n";
    long avail =
        mem.total_bytes - mem.reserved_code - mem.reserved_os - acct.shared_code_bytes;
    long base = acct.stack_bytes_per_copy + acct.state_bytes + acct.event_buffer_bytes;
    long kmax = neuron_capacity(1, mem, acct);
    for (long k = 1; k <= kmax; ++k) {
        long t_max = (avail - base * k) / k;  // table bytes per copy at k copies
        long n_k = t_max >= 0 ? 8 * t_max : 0;
        long cores_req = n_k > 0 ? (n_k + k - 1) / k : 0;
        o << k << "," << n_k << "," << cores_req << "," << std::min(cores * k, n_k) << "\n";
    }
    return o.str();
}

// ---------------------------------------------------------------------------
// Neuron simulation

std::string NeuronSimResult::spike_log_csv() const {
    std::ostringstream o;
    o << "time_ns,neuron\n";
    for (const auto& [t, n] : spike_log) o << t << "," << n << "\n";
    return o.str();
}

NeuronSimResult run_neuron_sim(long population, int steps, const Topology& t,
                               const AddressMap& addrs,
                               const std::vector<RoutingTable>& tables, const SimParams& sp,
                               const MemoryModel& mem, const NeuronAccounting& acct,
                               const std::vector<StimulusEvent>& stimulus,
                               std::uint64_t seed, const NeuronParams& np) {
    if (population < 1) throw std::invalid_argument("population must be >= 1");
    long cap = neuron_capacity(population, mem, acct);
    if (population > t.core_count() * cap)
        throw CapacityError("population " + std::to_string(population) +
                            " infeasible: neuron_capacity(N)=" + std::to_string(cap) +
                            " on " + std::to_string(t.core_count()) + " cores");

    const int N = static_cast<int>(population);
    long per_core = (population + t.core_count() - 1) / t.core_count();
    auto core_of = [&](int neuron) { return static_cast<int>(neuron / per_core); };

    // Connection sets: each neuron links to a seeded-random 10% of the others,
    // stored without self and without duplicates.
    const long fanout = static_cast<long>(std::ceil(acct.connectivity * (N - 1)));
    std::vector<std::vector<int>> targets(N);
    for (int i = 0; i < N; ++i) {
        std::mt19937_64 rng(seed * 1000003ull + static_cast<std::uint64_t>(i));
        std::vector<int> cand;
        cand.reserve(N - 1);
        for (int j = 0; j < N; ++j)
            if (j != i) cand.push_back(j);
        for (long k = 0; k < fanout; ++k) {
            size_t pick = k + static_cast<size_t>(rng() % (cand.size() - k));
            std::swap(cand[k], cand[pick]);
        }
        targets[i].assign(cand.begin(), cand.begin() + fanout);
        std::sort(targets[i].begin(), targets[i].end());
    }

    std::vector<double> v(N, -65.0), u(N);
    for (int i = 0; i < N; ++i) u[i] = np.b * v[i];
    std::vector<std::map<int, double>> inputs(steps + 1);
    for (const auto& s : stimulus) {
        if (s.step < 0 || s.step >= steps || s.neuron < 0 || s.neuron >= N)
            throw std::invalid_argument("stimulus outside the simulation window");
        inputs[s.step][s.neuron] += s.current;
    }

    NeuronSimResult res;
    res.connections_per_neuron = fanout;
    std::vector<TrafficEntry> traffic;

    for (int step = 0; step < steps; ++step) {
        // Only stimulated neurons integrate this step; the rest sleep.
        for (const auto& [neuron, current] : inputs[step]) {
            double I = current;
            v[neuron] += 0.5 * (0.04 * v[neuron] * v[neuron] + 5 * v[neuron] + 140 -
                                u[neuron] + I);
            v[neuron] += 0.5 * (0.04 * v[neuron] * v[neuron] + 5 * v[neuron] + 140 -
                                u[neuron] + I);
            u[neuron] += np.a * (np.b * v[neuron] - u[neuron]);
            if (v[neuron] >= np.threshold_mv) {
                SimTime now = static_cast<SimTime>(step) * np.step_ns;
                res.spike_log.emplace_back(now, neuron);
                v[neuron] = np.c;
                u[neuron] += np.d;
                for (int tgt : targets[neuron]) {
                    if (step + 1 <= steps && step + 1 < static_cast<int>(inputs.size()))
                        inputs[step + 1][tgt] += np.synaptic_weight;
                    traffic.push_back({now, core_of(neuron), core_of(tgt),
                                       np.spike_message_bytes, ChannelMode::Packet});
                    ++res.multicast_messages;
                }
            }
        }
    }

    Simulator sim(t, addrs, tables, sp);
    res.report = sim.run(traffic, static_cast<SimTime>(steps) * np.step_ns);
    return res;
}

// ---------------------------------------------------------------------------
// Shared memory emulation

SharedMemoryMap shared_mem_map(int controllers, long total_bytes) {
    if (controllers < 1) throw std::invalid_argument("at least one controller");
    if (total_bytes < 1) throw std::invalid_argument("empty address space");
    return SharedMemoryMap{controllers, total_bytes};
}

long SharedMemoryMap::capacity_of(int controller) const {
    if (controller < 0 || controller >= controllers) return 0;
    if (total_bytes <= controller) return 0;
    return (total_bytes - 1 - controller) / controllers + 1;
}

MemoryLocation locate(const SharedMemoryMap& map, long address) {
    if (address < 0 || address >= map.total_bytes)
        throw std::out_of_range("address outside the shared space");
    return MemoryLocation{static_cast<int>(address % map.controllers),
                          address / map.controllers};
}

std::vector<SharedMemOp> shared_trace_from_csv(const std::string& csv) {
    std::vector<SharedMemOp> out;
    std::istringstream in(csv);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line.rfind("time_ns", 0) == 0) continue;
        std::istringstream row(line);
        std::string f[4];
        for (int i = 0; i < 4; ++i)
            if (!std::getline(row, f[i], ','))
                throw std::invalid_argument("trace line " + std::to_string(lineno) +
                                            ": expected time_ns,op,address,size");
        SharedMemOp op;
        op.time_ns = std::stoll(f[0]);
        op.op = f[1].empty() ? 'R' : static_cast<char>(std::toupper(f[1][0]));
        if (op.op != 'R' && op.op != 'W')
            throw std::invalid_argument("trace line " + std::to_string(lineno) +
                                        ": op must be R or W");
        op.address = std::stol(f[2]);
        op.size = std::stol(f[3]);
        out.push_back(op);
    }
    return out;
}

std::string shared_trace_to_csv(const std::vector<SharedMemOp>& trace) {
    std::ostringstream o;
    o << "time_ns,op,address,size\n";
    for (const auto& e : trace)
        o << e.time_ns << "," << e.op << "," << e.address << "," << e.size << "\n";
    return o.str();
}

std::string SharedMemResult::histogram_csv() const {
    std::ostringstream o;
    o << "bucket_start_ns,bucket_end_ns,count\n";
    if (latencies_ns.empty()) return o.str();
    SimTime lo = *std::min_element(latencies_ns.begin(), latencies_ns.end());
    SimTime hi = *std::max_element(latencies_ns.begin(), latencies_ns.end());
    const int buckets = 16;
    SimTime width = std::max<SimTime>(1, (hi - lo + buckets) / buckets);
    std::vector<long> count(buckets, 0);
    for (SimTime l : latencies_ns)
        count[std::min<long>(buckets - 1, (l - lo) / width)]++;
    for (int b = 0; b < buckets; ++b)
        o << lo + b * width << "," << lo + (b + 1) * width << "," << count[b] << "\n";
    return o.str();
}

SharedMemResult run_shared_mem(const SharedMemoryMap& map,
                               const std::vector<SharedMemOp>& trace, int client_core,
                               const Topology& t, const AddressMap& addrs,
                               const std::vector<RoutingTable>& tables, const SimParams& sp) {
    if (map.controllers > t.core_count())
        throw std::invalid_argument("more controllers than cores");
    if (client_core < 0 || client_core >= t.core_count())
        throw std::invalid_argument("client core outside the machine");

    SharedMemResult res;
    int stride = std::max(1, t.core_count() / map.controllers);
    for (int i = 0; i < map.controllers; ++i) res.controller_cores.push_back(i * stride);

    const long request_bytes = 8;  // address plus opcode word
    std::vector<TrafficEntry> requests;
    for (const auto& op : trace) {
        MemoryLocation loc = locate(map, op.address);
        requests.push_back({op.time_ns, client_core, res.controller_cores[loc.controller],
                            request_bytes, ChannelMode::Packet});
    }

    // First pass models request arrival; responses are injected at those
    // arrival instants (controller service is immediate).
    Simulator pass1(t, addrs, tables, sp);
    SimReport r1 = pass1.run(requests);

    std::vector<TrafficEntry> full = requests;
    std::vector<size_t> response_of;  // trace index per response row
    for (size_t i = 0; i < trace.size(); ++i) {
        if (r1.messages[i].delivered_ns < 0) continue;
        long bytes = trace[i].op == 'R' ? trace[i].size : 4;
        full.push_back({r1.messages[i].delivered_ns, requests[i].dst, client_core, bytes,
                        ChannelMode::Packet});
        response_of.push_back(i);
    }

    Simulator pass2(t, addrs, tables, sp);
    res.report = pass2.run(full);

    double sum = 0;
    for (size_t ri = 0; ri < response_of.size(); ++ri) {
        const MessageRecord& resp = res.report.messages[requests.size() + ri];
        if (resp.delivered_ns < 0) continue;
        SimTime lat = resp.delivered_ns - trace[response_of[ri]].time_ns;
        res.latencies_ns.push_back(lat);
        sum += static_cast<double>(lat);
    }
    if (!res.latencies_ns.empty())
        res.mean_latency_ns = sum / static_cast<double>(res.latencies_ns.size());
    if (res.report.wall_ns > 0)
        res.aggregate_bits_s =
            res.report.delivered_bytes * 8.0 / (res.report.wall_ns * 1e-9);
    return res;
}

// ---------------------------------------------------------------------------
// Declarative workload description

WorkloadSpec parse_workload(const IniFile& ini) {
    WorkloadSpec w;
    std::string kind = ini.get("workload", "kind", "farmer");
    if (kind == "farmer")
        w.kind = WorkloadKind::FarmerWorker;
    else if (kind == "pipeline")
        w.kind = WorkloadKind::Pipeline;
    else if (kind == "neuron")
        w.kind = WorkloadKind::NeuronSim;
    else if (kind == "sharedmem")
        w.kind = WorkloadKind::SharedMemory;
    else
        throw std::invalid_argument("unknown workload kind: " + kind);

    w.farmer.workers = static_cast<int>(ini.get_int("workload", "workers", w.farmer.workers));
    w.farmer.scatter_bytes = ini.get_int("workload", "scatter_bytes", w.farmer.scatter_bytes);
    w.farmer.gather_bytes = ini.get_int("workload", "gather_bytes", w.farmer.gather_bytes);
    w.farmer.rounds = static_cast<int>(ini.get_int("workload", "rounds", w.farmer.rounds));

    w.pipeline.stages = static_cast<int>(ini.get_int("workload", "stages", w.pipeline.stages));
    w.pipeline.item_bytes = ini.get_int("workload", "item_bytes", w.pipeline.item_bytes);

    w.neurons = ini.get_int("workload", "neurons", w.neurons);
    w.steps = static_cast<int>(ini.get_int("workload", "steps", w.steps));
    // stimulus = step:neuron:current, repeatable
    for (const auto& v : ini.get_all("workload", "stimulus")) {
        StimulusEvent e;
        if (std::sscanf(v.c_str(), "%d:%d:%lf", &e.step, &e.neuron, &e.current) != 3)
            throw std::invalid_argument("workload stimulus expects step:neuron:current, got " + v);
        w.stimulus.push_back(e);
    }
    if (w.stimulus.empty() && ini.has("workload", "stimulus_neuron"))
        w.stimulus.push_back(
            {0, static_cast<int>(ini.get_int("workload", "stimulus_neuron", 0)), 1000.0});

    w.controllers = static_cast<int>(ini.get_int("workload", "controllers", w.controllers));
    w.total_bytes = ini.get_int("workload", "total_bytes", w.total_bytes);
    w.client_core = static_cast<int>(ini.get_int("workload", "client_core", w.client_core));
    w.trace_path = ini.get("workload", "trace", "");
    return w;
}

void validate_workload(const WorkloadSpec& w, const Topology& t, const MemoryModel& mem,
                       const NeuronAccounting& acct) {
    switch (w.kind) {
        case WorkloadKind::FarmerWorker:
            if (w.farmer.workers < 1 || w.farmer.workers + 1 > t.core_count())
                throw std::invalid_argument("workers + coordinator exceed the machine");
            break;
        case WorkloadKind::Pipeline:
            if (w.pipeline.stages < 1 || w.pipeline.stages > t.core_count())
                throw std::invalid_argument("stage count exceeds the machine");
            break;
        case WorkloadKind::NeuronSim: {
            long cap = neuron_capacity(w.neurons, mem, acct);
            if (w.neurons > t.core_count() * cap)
                throw CapacityError("population exceeds machine capacity");
            break;
        }
        case WorkloadKind::SharedMemory:
            if (w.controllers < 1 || w.controllers > t.core_count())
                throw std::invalid_argument("controller count exceeds the machine");
            if (w.client_core >= t.core_count())
                throw std::invalid_argument("client core outside the machine");
            break;
    }
}

}  // namespace swallow
