#ifndef SWALLOW_ROUTING_HPP
#define SWALLOW_ROUTING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swallow/topology.hpp"

namespace swallow {

// 16-bit node address, fields from most to least significant:
//   [vertical index | horizontal index | layer bit]
// With the vertical field leading, a longest-prefix cascade falls back to the
// vertical tier whenever the rows differ, which is exactly vertical-first
// dimension order; horizontal entries require a full row match first.
struct AddressPlan {
    int v_bits = 0;
    int h_bits = 0;
    int total_bits() const { return v_bits + h_bits + 1; }

    std::uint16_t encode(int row, int col, Layer l) const {
        return static_cast<std::uint16_t>((row << (h_bits + 1)) | (col << 1) |
                                          (l == Layer::Horizontal ? 1 : 0));
    }
    int row_of(std::uint16_t a) const { return a >> (h_bits + 1); }
    int col_of(std::uint16_t a) const { return (a >> 1) & ((1 << h_bits) - 1); }
    Layer layer_of(std::uint16_t a) const {
        return (a & 1) ? Layer::Horizontal : Layer::Vertical;
    }
};

struct AddressMap {
    AddressPlan plan;
    std::vector<std::uint16_t> by_core;  // indexed by flat core index

    std::uint16_t of(const Topology& t, const NodeId& n) const {
        return by_core[t.core_index(n)];
    }
};

AddressMap assign_addresses(const Topology& t);

// Where a matched destination leaves the switch. The table stores directions;
// the link serving a direction is resolved against the owner's ports at
// route/simulation time.
enum class OutDir { Local, Die, North, South, East, West };

const char* to_string(OutDir d);

struct TableEntry {
    std::uint16_t prefix = 0;  // value of the top `length` address bits
    int length = 0;
    OutDir out = OutDir::Local;
};

struct RoutingTable {
    NodeId owner;
    std::vector<TableEntry> entries;  // ordered longest prefix first

    // First (longest) matching entry; every valid address matches exactly one.
    const TableEntry* lookup(std::uint16_t addr, int total_bits) const;
};

enum class RoutingStrategy {
    VerticalFirst,  // 2.5D dimension order over the two layers
    NaiveXY,        // mesh-style X-Y that ignores layers; demonstrably broken
};

std::vector<RoutingTable> generate_tables(const Topology& t, const AddressMap& addrs,
                                          RoutingStrategy s = RoutingStrategy::VerticalFirst);

// Virtual channel discipline on on-die links. Crossings taken to switch the
// routing dimension travel on the transit channel; the final hop that lands
// on the destination core travels on the delivery channel. Keeping those
// apart makes every route's channel sequence strictly ascend
//   die-transit(entry) < vertical < die-transit(pivot) < horizontal < delivery
// so the channel dependency graph cannot cycle.
enum class Vc { Transit = 0, Delivery = 1 };

struct Hop {
    int link = -1;
    int dir = 0;  // 0: a->b, 1: b->a
    Vc vc = Vc::Transit;
};

struct Route {
    std::vector<Hop> hops;
    // On-die crossings taken to change routing dimension. The final on-die
    // hop into the destination core is delivery, not a transition.
    int layer_transitions = 0;
};

Route route(const Topology& t, const AddressMap& addrs,
            const std::vector<RoutingTable>& tables, const NodeId& src, const NodeId& dst);

struct VerificationReport {
    bool deliverable = true;
    long pairs_checked = 0;
    long undeliverable_pairs = 0;
    std::string first_failure;
    int max_layer_transitions = 0;
    bool cdg_acyclic = true;
    // Route load per directed physical channel, over all checked pairs.
    std::vector<long> channel_load;  // index = link*2 + dir
    std::string text() const;
    std::string histogram_csv(const Topology& t) const;
};

VerificationReport verify_tables(const Topology& t, const AddressMap& addrs,
                                 const std::vector<RoutingTable>& tables);

std::string tables_csv(const Topology& t, const AddressMap& addrs,
                       const std::vector<RoutingTable>& tables);
std::vector<RoutingTable> tables_from_csv(const Topology& t, const std::string& csv);

}  // namespace swallow

#endif
