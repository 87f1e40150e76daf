#include "swallow/energy_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swallow {

double core_power_mw(double f_mhz, CoreLoad load, const PowerProfile& p) {
    if (f_mhz <= 0 || f_mhz > p.idle_f1_mhz)
        throw std::invalid_argument("core frequency outside (0, " +
                                    std::to_string(p.idle_f1_mhz) + "] MHz");
    if (load == CoreLoad::ActiveLoaded) return p.static_mw + p.dyn_mw_per_mhz * f_mhz;
    return p.idle_p0_mw + (f_mhz - p.idle_f0_mhz) * (p.idle_p1_mw - p.idle_p0_mw) /
                              (p.idle_f1_mhz - p.idle_f0_mhz);
}

double dvfs_voltage(double f_mhz, const PowerProfile& p) {
    if (f_mhz < p.v_f0_mhz || f_mhz > p.v_f1_mhz)
        throw std::invalid_argument("frequency outside the characterized voltage range");
    return p.v_at_f0 + (f_mhz - p.v_f0_mhz) * (p.v_at_f1 - p.v_at_f0) /
                           (p.v_f1_mhz - p.v_f0_mhz);
}

double dvfs_power_mw(double f_mhz, const PowerProfile& p) {
    double vr = dvfs_voltage(f_mhz, p) / p.v_ref;
    double stat = p.static_mw * (p.static_v_exponent == 2 ? vr * vr : vr);
    return stat + p.dyn_mw_per_mhz * f_mhz * vr * vr;
}

double link_energy_joules(LinkClass cls, double bits, const MachineConfig& cfg) {
    if (bits < 0) throw std::invalid_argument("negative bit count");
    return bits * cfg.timing(cls).energy_pj_per_bit * 1e-12;
}

SystemPower system_power(int slices, CoreLoad load, double f_mhz, const PowerProfile& p) {
    if (slices < 1) throw std::invalid_argument("at least one slice");
    SystemPower s;
    s.cores_w = 16.0 * slices * core_power_mw(f_mhz, load, p) * 1e-3;
    s.wall_w = s.cores_w * p.wall_overhead;
    s.psu_w = s.wall_w * p.psu_fraction;
    s.compute_w = s.wall_w * p.compute_fraction;
    s.waste_w = s.wall_w * p.waste_fraction;
    s.network_w = s.wall_w * p.network_fraction;
    return s;
}

EnergyBreakdown run_energy(const SimReport& rep, const Topology& t,
                           const std::vector<CoreLoad>& core_loads, double f_mhz,
                           const MachineConfig& cfg) {
    if (static_cast<int>(core_loads.size()) != t.core_count())
        throw std::invalid_argument("one load state per core required");
    EnergyBreakdown e;
    const double seconds = rep.wall_ns * 1e-9;
    for (CoreLoad l : core_loads) {
        double w = core_power_mw(f_mhz, l, cfg.power) * 1e-3;
        if (l == CoreLoad::ActiveLoaded)
            e.cores_active_j += w * seconds;
        else
            e.cores_idle_j += w * seconds;
    }
    for (size_t i = 0; i < rep.links.size(); ++i) {
        LinkClass cls = t.links[i].cls;
        e.link_j[static_cast<int>(cls)] +=
            link_energy_joules(cls, static_cast<double>(rep.links[i].bits), cfg);
    }
    e.total_j = e.cores_active_j + e.cores_idle_j + e.link_j[0] + e.link_j[1] +
                e.link_j[2] + e.link_j[3];
    return e;
}

std::string EnergyBreakdown::csv() const {
    std::ostringstream o;
    char buf[64];
    auto row = [&](const char* name, double j) {
        std::snprintf(buf, sizeof buf, "%.9g", j);
        o << name << "," << buf << ",";
        std::snprintf(buf, sizeof buf, "%.6g", total_j > 0 ? j / total_j : 0.0);
        o << buf << "\n";
    };
    o << "component,joules,fraction\n";
    row("cores_active", cores_active_j);
    row("cores_idle", cores_idle_j);
    row("links_on_die", link_j[0]);
    row("links_on_board_vertical", link_j[1]);
    row("links_on_board_horizontal", link_j[2]);
    row("links_off_board", link_j[3]);
    row("total", total_j);
    return o.str();
}

}  // namespace swallow
