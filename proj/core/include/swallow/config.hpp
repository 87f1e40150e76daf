#ifndef SWALLOW_CONFIG_HPP
#define SWALLOW_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swallow/types.hpp"

namespace swallow {

// Plain sectioned key=value file:
//
//   # comment
//   [machine]
//   slices_x = 5
//   slices_y = 6
//
//   [link.off_board]
//   symbol_delay_cycles = 10
//   energy_pj_per_bit   = 5440
//
// Repeated keys inside one section accumulate (used by [wiring] and [bridge]).
class IniFile {
public:
    static IniFile parse_file(const std::string& path);
    static IniFile parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const;
    long get_int(const std::string& section, const std::string& key, long fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;
    std::vector<std::string> sections() const;

    const std::string& raw() const { return raw_; }

private:
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections_;
    std::string raw_;
};

// Symbol/token delays of one link class, in switch clock cycles. A token is
// eight bits sent as four two-bit symbols; it occupies the wire for
// 3*Ts + Tt + frame cycles.
struct LinkTiming {
    int symbol_delay = 2;   // Ts
    int token_delay = 1;    // Tt
    int frame_cycles = 1;   // calibration: lines up Ts=2,Tt=1 with 500 Mbit/s
    double energy_pj_per_bit = 0.0;

    int token_cycles() const { return 3 * symbol_delay + token_delay + frame_cycles; }
};

struct PowerProfile {
    double static_mw = 46.0;          // loaded-line intercept
    double dyn_mw_per_mhz = 0.30;     // loaded-line slope
    // Idle line fitted through the two measured endpoints.
    double idle_f0_mhz = 71.0, idle_p0_mw = 50.0;
    double idle_f1_mhz = 500.0, idle_p1_mw = 113.0;
    // Supply voltage characterization for DVFS projection.
    double v_ref = 1.0;
    double v_f0_mhz = 71.0, v_at_f0 = 0.60;
    double v_f1_mhz = 500.0, v_at_f1 = 0.95;
    int static_v_exponent = 1;  // leakage ~ V; configurable to 2
    // Wall power per slice over core power per slice (4.5 W / 3.1 W).
    double wall_overhead = 4.5 / 3.1;

    double psu_fraction = 0.26;
    double compute_fraction = 0.30;
    double waste_fraction = 0.40;
    double network_fraction = 0.04;
};

struct MemoryModel {
    long total_bytes = 65536;
    long reserved_code = 0;
    // Solved so the per-core neuron limit lands exactly on 191 (see
    // workloads.hpp). Negative: the measured limit packs state and event
    // buffers inside the 336-byte stack allocation.
    long reserved_os = -3369;
};

struct NeuronAccounting {
    long state_bytes = 8;
    long event_buffer_bytes = 10;
    long shared_code_bytes = 1100;
    long stack_bytes_per_copy = 336;
    double connectivity = 0.10;
};

struct BridgeSpec {
    int device_col = 0;  // global device column; attaches on a free South port
    double rate_bits_s = 80e6;  // per direction
};

// Wiring override: remove or add one external link between two devices.
struct WiringOverride {
    enum class Kind { Remove, Add } kind = Kind::Remove;
    int row_a = 0, col_a = 0;
    int row_b = 0, col_b = 0;
    std::optional<LinkClass> cls;  // Add only; defaults by board membership
};

struct MachineConfig {
    int slices_x = 5;
    int slices_y = 6;
    double switch_clock_mhz = 500.0;

    LinkTiming on_die{2, 1, 1, 1.63};
    LinkTiming on_board_vertical{10, 1, 1, 106.0};
    LinkTiming on_board_horizontal{10, 1, 1, 101.0};
    LinkTiming off_board{10, 1, 1, 5440.0};

    int credit_tokens = 8;
    int packet_payload_bytes = 20;
    double sync_overhead_ns = 89.0;

    PowerProfile power;
    MemoryModel memory;
    NeuronAccounting neuron;

    std::vector<BridgeSpec> bridges;
    std::vector<WiringOverride> wiring;

    const LinkTiming& timing(LinkClass c) const;
    double cycle_ns() const { return 1000.0 / switch_clock_mhz; }
    double link_rate_bits_s(LinkClass c) const;

    static MachineConfig defaults() { return MachineConfig{}; }
    static MachineConfig from_ini(const IniFile& ini);
    static MachineConfig load(const std::string& path);

    // Canonical text form; its hash stamps every emitted report.
    std::string canonical_text() const;
    std::uint64_t hash() const;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace swallow

#endif
