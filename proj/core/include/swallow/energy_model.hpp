#ifndef SWALLOW_ENERGY_MODEL_HPP
#define SWALLOW_ENERGY_MODEL_HPP

#include <string>
#include <vector>

#include "swallow/config.hpp"
#include "swallow/network_sim.hpp"
#include "swallow/topology.hpp"

namespace swallow {

enum class CoreLoad { ActiveLoaded, Idle };

// Core power in mW. Loaded: static + dynamic slope. Idle: line through the
// two measured endpoints.
double core_power_mw(double f_mhz, CoreLoad load,
                     const PowerProfile& p = PowerProfile{});

// Voltage-and-frequency scaled loaded power. V(f) interpolates the two
// characterized points; the dynamic term scales with (V/Vref)^2, the static
// term with (V/Vref)^static_v_exponent. No extrapolation outside the
// characterized range.
double dvfs_power_mw(double f_mhz, const PowerProfile& p = PowerProfile{});
double dvfs_voltage(double f_mhz, const PowerProfile& p = PowerProfile{});

double link_energy_joules(LinkClass cls, double bits,
                          const MachineConfig& cfg = MachineConfig::defaults());

struct SystemPower {
    double cores_w = 0;  // sum of per-core supply power
    double wall_w = 0;   // after PSU conversion and support overhead
    double psu_w = 0, compute_w = 0, waste_w = 0, network_w = 0;
};

SystemPower system_power(int slices, CoreLoad load, double f_mhz = 500.0,
                         const PowerProfile& p = PowerProfile{});

struct EnergyBreakdown {
    double cores_active_j = 0;
    double cores_idle_j = 0;
    double link_j[4] = {0, 0, 0, 0};  // by LinkClass
    double total_j = 0;               // defined as the sum of the above, fixed order

    std::string csv() const;
};

// Energy of one simulated run: per-core power (load states given per core)
// over the simulated wall time plus per-bit link energies over bits carried.
EnergyBreakdown run_energy(const SimReport& rep, const Topology& t,
                           const std::vector<CoreLoad>& core_loads, double f_mhz,
                           const MachineConfig& cfg = MachineConfig::defaults());

}  // namespace swallow

#endif
