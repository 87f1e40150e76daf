#ifndef SWALLOW_CORE_MODEL_HPP
#define SWALLOW_CORE_MODEL_HPP

#include "swallow/topology.hpp"

namespace swallow {

// A thread is a rate source: the 4-slot pipeline issues one instruction per
// cycle, shared evenly once more than four threads are active.
struct CoreConfig {
    double clock_mhz = 500.0;
    int active_threads = 1;
};

struct ThreadThroughput {
    double per_thread_mips = 0;
    double aggregate_mips = 0;
};

ThreadThroughput thread_throughput(const CoreConfig& cfg);

// Peak injection at the network interface: one byte in and one byte out per
// cycle, per direction.
double node_injection_limit_bits_s(double clock_mhz);

struct CommMetrics {
    double e = 0;  // node source/sink demand, bits/s
    double c = 0;  // node communication capacity, bits/s
    double E = 0;  // system demand, bits/s
    double C = 0;  // system capacity, bits/s
};

double ratio_e_over_c(const CommMetrics& m);
double ratio_E_over_C(const CommMetrics& m);
// Both ratios at or below one: communication cannot throttle execution.
bool communication_not_throttled(const CommMetrics& m);

enum class TrafficPattern { Congested, DisjointPaths };

// Demand and capacity for this machine. Node demand comes from the interface
// serialization limit; node capacity is the package-internal link budget (two
// physical internal links, both directions). System capacity counts external
// link budgets: a single shared route under Congested, all four device links
// under DisjointPaths.
CommMetrics swallow_metrics(const Topology& t, TrafficPattern pattern,
                            const MachineConfig& cfg = MachineConfig::defaults());

}  // namespace swallow

#endif
