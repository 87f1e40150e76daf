#ifndef SWALLOW_NETWORK_SIM_HPP
#define SWALLOW_NETWORK_SIM_HPP

#include <cstdint>
#include <deque>
#include <queue>
#include <string>
#include <vector>

#include "swallow/routing.hpp"
#include "swallow/topology.hpp"

namespace swallow {

enum class TokenKind { Data, HeaderByte, EndOfPacket, Control };
enum class ChannelMode { Packet, Circuit };

// Token position within a message: a route-opening header of header_tokens
// bytes, the data payload, and for packets a closing control token.
inline TokenKind token_kind(long tok, int header_tokens, long payload_tokens) {
    if (tok < header_tokens) return TokenKind::HeaderByte;
    if (tok < header_tokens + payload_tokens) return TokenKind::Data;
    return TokenKind::EndOfPacket;
}

inline const char* to_string(ChannelMode m) {
    return m == ChannelMode::Packet ? "packet" : "circuit";
}

// Per-token wire occupancy in switch cycles: 3*Ts + Tt plus the framing
// calibration cycle that lines the fastest mode (Ts=2, Tt=1) up with
// 500 Mbit/s at a 500 MHz switch clock.
int token_time_cycles(const LinkSpec& l);

struct SimParams {
    double cycle_ns = 2.0;           // switch clock period
    int credit_tokens = 8;           // downstream buffer depth per virtual channel
    int header_tokens = 3;           // route-opening header
    int loopback_cycles = 4;         // switch transit for core-local transfers
    double sync_overhead_ns = 89.0;  // per-message synchronization constant

    static SimParams from_config(const MachineConfig& cfg) {
        SimParams p;
        p.cycle_ns = cfg.cycle_ns();
        p.credit_tokens = cfg.credit_tokens;
        p.sync_overhead_ns = cfg.sync_overhead_ns;
        return p;
    }
};

// One timed send request. Requests with the same (src, dst, mode) share a
// channel, in file order; a circuit channel opens once and holds its links.
struct TrafficEntry {
    SimTime time_ns = 0;
    int src = 0;  // flat core index
    int dst = 0;
    long bytes = 0;
    ChannelMode mode = ChannelMode::Packet;
};

std::vector<TrafficEntry> traffic_from_csv(const std::string& csv);
std::string traffic_to_csv(const std::vector<TrafficEntry>& traffic);

struct FlowStats {
    int channel = 0;
    int src = 0, dst = 0;
    ChannelMode mode = ChannelMode::Packet;
    long messages = 0;
    long injected_bytes = 0;
    long delivered_bytes = 0;
    SimTime first_injection = 0;
    SimTime last_delivery = 0;
    double sum_latency_ns = 0;
    SimTime max_latency_ns = 0;
    SimTime blocked_ns = 0;  // time sends waited before their first token moved
    long payload_tokens_delivered = 0;
    SimTime first_payload_delivery = 0;
    SimTime last_payload_delivery = 0;

    double mean_latency_ns() const {
        return messages ? sum_latency_ns / static_cast<double>(messages) : 0.0;
    }
    // Inter-delivery data rate once the pipeline is full; equals the
    // bottleneck link rate on an idle path.
    double steady_rate_bits_s() const {
        if (payload_tokens_delivered < 2) return 0.0;
        SimTime span = last_payload_delivery - first_payload_delivery;
        if (span <= 0) return 0.0;
        return (payload_tokens_delivered - 1) * 8.0 / (span * 1e-9);
    }
};

struct LinkUse {
    long bits = 0;        // everything on the wire, headers and closes included
    SimTime busy_ns = 0;  // disjoint occupancy intervals
};

struct MessageRecord {
    int flow = 0;
    SimTime inject_ns = 0;
    SimTime delivered_ns = -1;  // -1: still in flight at quiescence
    long bytes = 0;
};

struct SimReport {
    std::vector<FlowStats> flows;
    std::vector<LinkUse> links;  // by link index, both directions combined
    std::vector<MessageRecord> messages;
    SimTime wall_ns = 0;
    long injected_bytes = 0;
    long delivered_bytes = 0;
    long in_flight_bytes = 0;  // stuck behind held circuits at quiescence
    int max_buffer_occupancy = 0;

    bool conservation_ok() const {
        return injected_bytes == delivered_bytes + in_flight_bytes;
    }
    std::string summary_text() const;
    std::string flows_csv() const;
    std::string links_csv(const Topology& t) const;
    // Per-core rollup: bytes sourced and sunk, injection-side blocked time.
    std::string nodes_csv(const Topology& t) const;
};

class Simulator {
public:
    Simulator(const Topology& t, const AddressMap& addrs,
              const std::vector<RoutingTable>& tables, SimParams params);

    // Deterministic event-ordered execution. Throws std::invalid_argument on
    // malformed traffic before anything runs, SimError on credit deadlock.
    SimReport run(const std::vector<TrafficEntry>& traffic, SimTime horizon_ns = 0);

    SimTime link_token_ns(int link) const { return token_ns_[link]; }

private:
    struct Event {
        SimTime t = 0;
        std::uint64_t seq = 0;
        int type = 0;  // 0 inject, 1 token done, 3 bulk delivery, 4 local
        int a = 0, b = 0, c = 0;
        bool operator>(const Event& o) const {
            return t != o.t ? t > o.t : seq > o.seq;
        }
    };

    struct QTok {
        int msg = 0;
        int tok = 0;
        int hop = 0;
    };

    struct VcState {
        int holder = -1;       // channel currently holding this (vc of a) link
        int current_msg = -1;  // message whose tokens are mid-flight, for contiguity
        int last_served = -1;  // round-robin position for packet-boundary arbitration
        std::deque<QTok> q;
        int occupancy = 0;  // tokens parked in the downstream buffer
    };

    struct DirChan {
        SimTime token_ns = 0;
        SimTime wire_free = 0;  // bulk-transfer bookkeeping only
        bool busy = false;      // a token is mid-flight on the wire
        bool is_die = false;
        int rr = 0;
        VcState vc[2];
    };

    struct Message {
        int channel = 0;
        int flow = 0;
        SimTime inject_time = 0;
        int header = 0;
        long payload = 0;
        bool eop = false;
        bool local = false;
        long total = 0;
        SimTime first_start = -1;
        long delivered_payload = 0;
        bool completed = false;
        SimTime complete_time = 0;
        // bulk (established circuit) sends
        bool bulk = false;
        SimTime bulk_first_arrival = 0;
    };

    struct ChannelState {
        int id = 0;
        int src = 0, dst = 0;
        ChannelMode mode = ChannelMode::Packet;
        bool established = false;
        int active_sends = 0;
        std::deque<int> pending;
        std::vector<Hop> hops;
        int flow = 0;
    };

    const Topology& topo_;
    const AddressMap& addrs_;
    const std::vector<RoutingTable>& tables_;
    SimParams p_;
    std::vector<SimTime> token_ns_;

    std::vector<Message> msgs_;
    std::vector<ChannelState> channels_;
    std::vector<DirChan> chans_;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> pq_;
    std::uint64_t event_seq_ = 0;
    SimReport rep_;
    SimTime now_ = 0;

    void push_event(SimTime at, int type, int a, int b, int c);
    void begin_message(int mi);
    void start_bulk_circuit(int mi);
    void push_ready(int mi, int tok, int hop);
    void try_serve(int ci);
    void start_token(int ci, int vc, const QTok& qt);
    void token_done(int mi, int tok, int hop);
    void complete_message(int mi, SimTime delivered_at);
    void deliver_payload_token(int mi, SimTime at);
    int chan_index(const Hop& h) const { return h.link * 2 + h.dir; }
};

// Analytical end-to-end latency model: first-byte-in to last-byte-out for one
// message on an idle network, including the per-message synchronization
// constant. Single-token sends are acknowledged, so they carry a full round
// trip; longer transfers stream behind the initial handshake. Core-local
// transfers loop through the core's own switch and need no network sync.
struct LatencyEstimate {
    double ns = 0;
    double sync_overhead_ns = 0;
    int hops = 0;
};

LatencyEstimate measure_latency(const Topology& t, const AddressMap& addrs,
                                const std::vector<RoutingTable>& tables, const SimParams& p,
                                const NodeId& src, const NodeId& dst, int payload_bytes);

}  // namespace swallow

#endif
