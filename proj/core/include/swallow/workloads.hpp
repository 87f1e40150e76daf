#ifndef SWALLOW_WORKLOADS_HPP
#define SWALLOW_WORKLOADS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "swallow/network_sim.hpp"
#include "swallow/routing.hpp"
#include "swallow/topology.hpp"

namespace swallow {

enum class WorkloadKind { FarmerWorker, Pipeline, NeuronSim, SharedMemory };

const char* to_string(WorkloadKind k);

// ---------------------------------------------------------------------------
// Farmer-worker (scatter-gather)

struct FarmerWorkerSpec {
    int workers = 15;
    long scatter_bytes = 64;
    long gather_bytes = 64;
    int rounds = 1;
    ChannelMode mode = ChannelMode::Packet;
};

struct FarmerWorkerResult {
    int coordinator = 0;
    std::vector<int> workers;
    std::vector<TrafficEntry> traffic;
    // Route-load analysis over the generated flows.
    long max_coordinator_link_load = 0;
    long max_other_link_load = 0;
    bool hub_bottleneck = false;
    std::vector<int> links_used;  // link indices any flow touches
};

FarmerWorkerResult gen_farmer_worker(const Topology& t, const AddressMap& addrs,
                                     const std::vector<RoutingTable>& tables,
                                     const FarmerWorkerSpec& spec);

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineSpec {
    int stages = 4;
    long item_bytes = 2000;  // one streamed transfer per stage link
    ChannelMode mode = ChannelMode::Circuit;
};

struct PipelineResult {
    std::vector<int> stage_cores;
    std::vector<TrafficEntry> traffic;
    // Steady state is bounded by the slowest inter-stage link.
    double predicted_throughput_bits_s = 0;
    std::vector<int> links_used;
};

PipelineResult gen_pipeline(const Topology& t, const AddressMap& addrs,
                            const std::vector<RoutingTable>& tables, const PipelineSpec& spec);

// ---------------------------------------------------------------------------
// Memory scaling

// Memory a task can address when `tasks` tasks share P cores and idle cores
// serve as remote stores.
double memory_per_task_kb(long cores, long tasks, long bytes_per_core = 65536);

// Three curves over exponentially growing machines: one task, one task per
// core, and task count growing linearly in log2(P).
std::string memory_scaling_csv(long max_cores, long bytes_per_core = 65536);

// ---------------------------------------------------------------------------
// Code overlays

struct ProgramRegion {
    long start_word = 0;
    long size_words = 0;
    bool overlaid = false;
    long slot_words = 0;  // shared window size for an overlaid range
};

struct OverlayPlan {
    long resident_words = 0;
    std::vector<ProgramRegion> regions;
};

struct OverlayFault {
    size_t access_index;
    int region;
    long segment;
};

OverlayPlan overlay_plan(const std::vector<ProgramRegion>& regions);
std::vector<OverlayFault> overlay_faults(const OverlayPlan& plan,
                                         const std::vector<long>& access_trace);

// ---------------------------------------------------------------------------
// Neuron case study

// Neurons per core: shared code once, then per copy a stack, state, event
// buffer, and an N-bit connectivity table. reserved_os is the documented
// calibration that puts the small-N limit at 191.
long neuron_capacity(long population, const MemoryModel& mem, const NeuronAccounting& acct);

struct NeuronScaling {
    long max_neurons = 0;   // largest N with N <= P * capacity(N)
    long cores = 0;
    // P required to host N neurons; quadratic in N once the table dominates.
    static long cores_required(long neurons, const MemoryModel& mem,
                               const NeuronAccounting& acct);
};

NeuronScaling neuron_scaling(long cores, const MemoryModel& mem,
                             const NeuronAccounting& acct);
// Curve for the scaling figure: neurons/core on the x-axis.
std::string neuron_scaling_csv(long cores, const MemoryModel& mem,
                               const NeuronAccounting& acct);

struct NeuronParams {
    double a = 0.02, b = 0.2, c = -65.0, d = 8.0;  // regular-spiking constants
    double threshold_mv = 30.0;
    double synaptic_weight = 6.0;
    SimTime step_ns = 1'000'000;  // 1 ms integration step
    int spike_message_bytes = 4;
};

struct StimulusEvent {
    int step = 0;
    int neuron = 0;
    double current = 0;
};

struct NeuronSimResult {
    std::vector<std::pair<SimTime, int>> spike_log;  // (time_ns, neuron)
    SimReport report;
    long multicast_messages = 0;
    long connections_per_neuron = 0;
    std::string spike_log_csv() const;
};

NeuronSimResult run_neuron_sim(long population, int steps, const Topology& t,
                               const AddressMap& addrs,
                               const std::vector<RoutingTable>& tables, const SimParams& sp,
                               const MemoryModel& mem, const NeuronAccounting& acct,
                               const std::vector<StimulusEvent>& stimulus,
                               std::uint64_t seed, const NeuronParams& np = NeuronParams{});

// ---------------------------------------------------------------------------
// Distributed shared memory emulation

struct SharedMemoryMap {
    int controllers = 1;
    long total_bytes = 0;

    long capacity_of(int controller) const;  // addresses landing on it
};

SharedMemoryMap shared_mem_map(int controllers, long total_bytes);

struct MemoryLocation {
    int controller = 0;
    long offset = 0;
};

// controller = address % n, offset = address / n; a bijection from [0, total)
// onto the union of per-controller ranges.
MemoryLocation locate(const SharedMemoryMap& map, long address);

struct SharedMemOp {
    SimTime time_ns = 0;
    char op = 'R';  // R or W
    long address = 0;
    long size = 0;
};

std::vector<SharedMemOp> shared_trace_from_csv(const std::string& csv);
std::string shared_trace_to_csv(const std::vector<SharedMemOp>& trace);

struct SharedMemResult {
    SimReport report;
    std::vector<SimTime> latencies_ns;  // per completed op, request to response
    double mean_latency_ns = 0;
    double aggregate_bits_s = 0;
    std::vector<int> controller_cores;
    std::string histogram_csv() const;
};

// Each op becomes a request to its controller and a response back. Controller
// service time is zero; the two legs run in one simulation with response
// injection at the request's modeled arrival.
SharedMemResult run_shared_mem(const SharedMemoryMap& map, const std::vector<SharedMemOp>& trace,
                               int client_core, const Topology& t, const AddressMap& addrs,
                               const std::vector<RoutingTable>& tables, const SimParams& sp);

// ---------------------------------------------------------------------------
// Declarative scenario description, read from the [workload] config section.

struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::FarmerWorker;
    FarmerWorkerSpec farmer;
    PipelineSpec pipeline;
    // neuron scenario
    long neurons = 60;
    int steps = 10;
    std::vector<StimulusEvent> stimulus;
    // shared-memory scenario
    int controllers = 16;
    long total_bytes = 65536;
    int client_core = -1;  // -1: last core
    std::string trace_path;
};

WorkloadSpec parse_workload(const IniFile& ini);
// Parameter bounds against a concrete machine; throws on violation.
void validate_workload(const WorkloadSpec& spec, const Topology& t,
                       const MemoryModel& mem, const NeuronAccounting& acct);

}  // namespace swallow

#endif
