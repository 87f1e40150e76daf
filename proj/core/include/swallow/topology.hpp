#ifndef SWALLOW_TOPOLOGY_HPP
#define SWALLOW_TOPOLOGY_HPP

#include <array>
#include <string>
#include <vector>

#include "swallow/config.hpp"
#include "swallow/types.hpp"

namespace swallow {

// One bidirectional physical link between two cores' switches.
struct LinkSpec {
    LinkClass cls = LinkClass::OnDie;
    int symbol_delay = 2;  // Ts, switch cycles
    int token_delay = 1;   // Tt, switch cycles
    int frame_cycles = 1;
    double rate_bits_s = 500e6;
    double energy_pj_per_bit = 0.0;
    NodeId a, b;

    int token_cycles() const { return 3 * symbol_delay + token_delay + frame_cycles; }
};

// External attachment points of one package, N/S/E/W. Boundary devices leave
// some unconnected (-1).
enum class Port { North = 0, South = 1, East = 2, West = 3 };

struct DeviceLinks {
    int die = -1;                       // link index
    std::array<int, 4> ext{-1, -1, -1, -1};  // by Port
};

struct ValidationFinding {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool empty() const { return findings.empty(); }
    std::string text() const;
};

// The machine graph. Devices sit on a global grid of 4*slices_y rows by
// 2*slices_x columns (a slice is a 4x2 board); vertical rails chain the
// vertical-layer cores of each column, horizontal rails chain the
// horizontal-layer cores of each row, and the on-die link joins the two
// layers inside every package. Immutable after construction.
class Topology {
public:
    int slices_x = 0, slices_y = 0;
    std::vector<LinkSpec> links;
    std::vector<DeviceLinks> device_links;  // by device grid index
    std::vector<BridgeSpec> bridges;
    std::vector<LinkSpec> bridge_links;  // bridge attachment wiring (not routed)

    int slice_count() const { return slices_x * slices_y; }
    int core_count() const { return 16 * slice_count(); }
    int device_count() const { return 8 * slice_count(); }
    int device_rows() const { return 4 * slices_y; }
    int device_cols() const { return 2 * slices_x; }

    // Device grid index <-> position.
    int device_index(int row, int col) const { return row * device_cols() + col; }
    int device_row(int dev) const { return dev / device_cols(); }
    int device_col(int dev) const { return dev % device_cols(); }

    // NodeId <-> flat core index <-> grid position.
    int core_index(const NodeId& n) const;
    NodeId node_at(int core_index) const;
    NodeId node_of(int dev_row, int dev_col, Layer l) const;
    int device_of(const NodeId& n) const;
    bool contains(const NodeId& n) const;

    static Layer layer_of(const NodeId& n) {
        return n.core == 0 ? Layer::Vertical : Layer::Horizontal;
    }

    std::vector<LinkSpec> links_of(const NodeId& n) const;
    std::vector<int> link_indices_of(const NodeId& n) const;
    // Link index for a switch port; -1 when unpopulated. Die = the package's
    // internal link; N/S resolve only at vertical-layer cores, E/W only at
    // horizontal-layer cores.
    int port_link(const NodeId& n, Port p) const;
    int die_link(const NodeId& n) const;

    std::string adjacency_csv() const;
    std::string graph_dot() const;
};

Topology build_topology(int slices_x, int slices_y,
                        const MachineConfig& cfg = MachineConfig::defaults());
ValidationReport validate_topology(const Topology& t);

}  // namespace swallow

#endif
