#include "swallow/core_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace swallow {

ThreadThroughput thread_throughput(const CoreConfig& cfg) {
    if (cfg.active_threads < 1 || cfg.active_threads > 8)
        throw std::invalid_argument("active threads must be 1..8, got " +
                                    std::to_string(cfg.active_threads));
    if (cfg.clock_mhz <= 0) throw std::invalid_argument("clock must be positive");
    ThreadThroughput t;
    t.per_thread_mips = cfg.clock_mhz / std::max(4, cfg.active_threads);
    t.aggregate_mips = t.per_thread_mips * cfg.active_threads;
    return t;
}

double node_injection_limit_bits_s(double clock_mhz) {
    return 8.0 * clock_mhz * 1e6;
}

double ratio_e_over_c(const CommMetrics& m) {
    if (m.c <= 0) throw std::invalid_argument("node communication capacity must be positive");
    return m.e / m.c;
}

double ratio_E_over_C(const CommMetrics& m) {
    if (m.C <= 0) throw std::invalid_argument("system communication capacity must be positive");
    return m.E / m.C;
}

bool communication_not_throttled(const CommMetrics& m) {
    return ratio_e_over_c(m) <= 1.0 && ratio_E_over_C(m) <= 1.0;
}

CommMetrics swallow_metrics(const Topology& t, TrafficPattern pattern,
                            const MachineConfig& cfg) {
    CommMetrics m;
    const double devices = t.device_count();
    m.e = node_injection_limit_bits_s(cfg.switch_clock_mhz);
    // Package budget: two internal links, both directions, at the on-die rate.
    m.c = 4.0 * cfg.link_rate_bits_s(LinkClass::OnDie);
    double ext = cfg.link_rate_bits_s(LinkClass::OnBoardVertical);
    double links_used = pattern == TrafficPattern::Congested ? 1.0 : 4.0;
    m.E = m.e * devices;
    m.C = ext * links_used * devices;
    return m;
}

}  // namespace swallow
