#include "swallow/network_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace swallow {

int token_time_cycles(const LinkSpec& l) {
    if (l.symbol_delay < 1 || l.token_delay < 1)
        throw std::invalid_argument("token_time: symbol and token delays must be >= 1");
    return l.token_cycles();
}

std::vector<TrafficEntry> traffic_from_csv(const std::string& csv) {
    std::vector<TrafficEntry> out;
    std::istringstream in(csv);
    std::string line;
    bool first = true;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (first && line.rfind("time_ns", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        std::istringstream row(line);
        std::string f[5];
        for (int i = 0; i < 5; ++i)
            if (!std::getline(row, f[i], ','))
                throw std::invalid_argument("traffic line " + std::to_string(lineno) +
                                            ": expected time_ns,src,dst,bytes,mode");
        TrafficEntry e;
        e.time_ns = std::stoll(f[0]);
        e.src = std::stoi(f[1]);
        e.dst = std::stoi(f[2]);
        e.bytes = std::stol(f[3]);
        if (f[4] == "packet")
            e.mode = ChannelMode::Packet;
        else if (f[4] == "circuit")
            e.mode = ChannelMode::Circuit;
        else
            throw std::invalid_argument("traffic line " + std::to_string(lineno) +
                                        ": mode must be packet or circuit");
        out.push_back(e);
    }
    return out;
}

std::string traffic_to_csv(const std::vector<TrafficEntry>& traffic) {
    std::ostringstream o;
    o << "time_ns,src,dst,bytes,mode\n";
    for (const auto& e : traffic)
        o << e.time_ns << "," << e.src << "," << e.dst << "," << e.bytes << ","
          << to_string(e.mode) << "\n";
    return o.str();
}

Simulator::Simulator(const Topology& t, const AddressMap& addrs,
                     const std::vector<RoutingTable>& tables, SimParams params)
    : topo_(t), addrs_(addrs), tables_(tables), p_(params) {
    token_ns_.resize(t.links.size());
    for (size_t i = 0; i < t.links.size(); ++i)
        token_ns_[i] =
            static_cast<SimTime>(std::llround(token_time_cycles(t.links[i]) * p_.cycle_ns));
}

void Simulator::push_event(SimTime at, int type, int a, int b, int c) {
    pq_.push(Event{at, event_seq_++, type, a, b, c});
}

SimReport Simulator::run(const std::vector<TrafficEntry>& traffic, SimTime horizon_ns) {
    // Validate everything up front.
    for (size_t i = 0; i < traffic.size(); ++i) {
        const auto& e = traffic[i];
        if (e.src < 0 || e.src >= topo_.core_count() || e.dst < 0 ||
            e.dst >= topo_.core_count())
            throw std::invalid_argument("traffic row " + std::to_string(i) +
                                        ": node index outside the machine");
        if (e.bytes < 0)
            throw std::invalid_argument("traffic row " + std::to_string(i) +
                                        ": negative byte count");
        if (e.time_ns < 0)
            throw std::invalid_argument("traffic row " + std::to_string(i) +
                                        ": negative start time");
    }

    msgs_.clear();
    channels_.clear();
    rep_ = SimReport{};
    rep_.links.assign(topo_.links.size(), LinkUse{});
    chans_.assign(topo_.links.size() * 2, DirChan{});
    for (size_t li = 0; li < topo_.links.size(); ++li)
        for (int d = 0; d < 2; ++d) {
            chans_[li * 2 + d].token_ns = token_ns_[li];
            chans_[li * 2 + d].is_die = topo_.links[li].cls == LinkClass::OnDie;
        }
    pq_ = {};
    event_seq_ = 0;
    now_ = 0;

    std::map<std::tuple<int, int, int>, int> chan_ids;
    for (const auto& e : traffic) {
        auto key = std::make_tuple(e.src, e.dst, static_cast<int>(e.mode));
        auto it = chan_ids.find(key);
        int ci;
        if (it == chan_ids.end()) {
            ci = static_cast<int>(channels_.size());
            chan_ids.emplace(key, ci);
            ChannelState ch;
            ch.id = ci;
            ch.src = e.src;
            ch.dst = e.dst;
            ch.mode = e.mode;
            ch.hops =
                route(topo_, addrs_, tables_, topo_.node_at(e.src), topo_.node_at(e.dst)).hops;
            ch.flow = ci;
            channels_.push_back(std::move(ch));
            FlowStats fs;
            fs.channel = ci;
            fs.src = e.src;
            fs.dst = e.dst;
            fs.mode = e.mode;
            fs.first_injection = e.time_ns;
            rep_.flows.push_back(fs);
        } else {
            ci = it->second;
        }
        Message m;
        m.channel = ci;
        m.flow = channels_[ci].flow;
        m.inject_time = e.time_ns;
        m.payload = e.bytes;
        m.local = channels_[ci].hops.empty();
        msgs_.push_back(m);
    }

    // Header/EOP assignment: packets carry both on every send; a circuit
    // carries the header only on its opening send and never closes.
    {
        std::vector<bool> opened(channels_.size(), false);
        for (auto& m : msgs_) {
            ChannelState& ch = channels_[m.channel];
            if (ch.mode == ChannelMode::Packet) {
                m.header = p_.header_tokens;
                m.eop = true;
            } else {
                m.header = opened[m.channel] ? 0 : p_.header_tokens;
                opened[m.channel] = true;
            }
            m.total = m.header + m.payload + (m.eop ? 1 : 0);
        }
    }

    for (size_t mi = 0; mi < msgs_.size(); ++mi) {
        rep_.flows[msgs_[mi].flow].first_injection =
            std::min(rep_.flows[msgs_[mi].flow].first_injection, msgs_[mi].inject_time);
        push_event(msgs_[mi].inject_time, 0, static_cast<int>(mi), 0, 0);
    }

    while (!pq_.empty()) {
        Event ev = pq_.top();
        pq_.pop();
        now_ = ev.t;
        rep_.wall_ns = std::max(rep_.wall_ns, now_);
        switch (ev.type) {
            case 0: {  // inject
                int mi = ev.a;
                Message& m = msgs_[mi];
                ChannelState& ch = channels_[m.channel];
                rep_.injected_bytes += m.payload;
                rep_.flows[m.flow].injected_bytes += m.payload;
                rep_.flows[m.flow].messages++;
                if (ch.mode == ChannelMode::Circuit &&
                    (ch.active_sends > 0 || !ch.pending.empty())) {
                    ch.pending.push_back(mi);
                } else {
                    begin_message(mi);
                }
                break;
            }
            case 1:  // token crossed its link
                token_done(ev.a, ev.b, ev.c);
                break;
            case 3: {  // bulk circuit delivery
                int mi = ev.a;
                Message& m = msgs_[mi];
                rep_.delivered_bytes += m.payload;
                m.delivered_payload = m.payload;
                rep_.flows[m.flow].delivered_bytes += m.payload;
                complete_message(mi, now_);
                break;
            }
            case 4: {  // core-local delivery
                int mi = ev.a;
                Message& m = msgs_[mi];
                m.delivered_payload = m.payload;
                rep_.delivered_bytes += m.payload;
                rep_.flows[m.flow].delivered_bytes += m.payload;
                if (m.payload > 0) {
                    FlowStats& f = rep_.flows[m.flow];
                    if (f.payload_tokens_delivered == 0) f.first_payload_delivery = now_;
                    f.last_payload_delivery = now_;
                    f.payload_tokens_delivered += m.payload;
                }
                complete_message(mi, now_);
                break;
            }
        }
    }

    rep_.wall_ns = std::max(rep_.wall_ns, horizon_ns);

    long undelivered = 0;
    for (const auto& m : msgs_) {
        undelivered += m.payload - m.delivered_payload;
        MessageRecord rec;
        rec.flow = m.flow;
        rec.inject_ns = m.inject_time;
        rec.delivered_ns = m.completed ? m.complete_time : -1;
        rec.bytes = m.payload;
        rep_.messages.push_back(rec);
    }
    rep_.in_flight_bytes = undelivered;

    if (undelivered > 0) {
        // Quiescence with stranded tokens is legitimate only behind a held
        // circuit; anything else is a credit deadlock and a bug.
        bool circuit_exists = false;
        for (const auto& ch : channels_)
            if (ch.mode == ChannelMode::Circuit && ch.established) circuit_exists = true;
        if (!circuit_exists) {
            std::ostringstream diag;
            diag << "credit deadlock: " << undelivered << " bytes undeliverable; blocked ";
            for (size_t c = 0; c < chans_.size(); ++c)
                for (int v = 0; v < 2; ++v)
                    if (!chans_[c].vc[v].q.empty())
                        diag << "[chan " << c << " vc " << v << " holder "
                             << chans_[c].vc[v].holder << " queued "
                             << chans_[c].vc[v].q.size() << "] ";
            throw SimError(diag.str());
        }
    }

    return rep_;
}

void Simulator::begin_message(int mi) {
    Message& m = msgs_[mi];
    ChannelState& ch = channels_[m.channel];
    ch.active_sends++;
    if (m.local) {
        SimTime per_tok = static_cast<SimTime>(std::llround(p_.loopback_cycles * p_.cycle_ns));
        m.first_start = now_;
        push_event(now_ + std::max<long>(m.total, 1) * per_tok, 4, mi, 0, 0);
        return;
    }
    if (ch.mode == ChannelMode::Circuit && ch.established) {
        start_bulk_circuit(mi);
        return;
    }
    push_ready(mi, 0, 0);
}

// All links on the route are held by this circuit, so the transfer streams
// without arbitration: token i reaches the destination at
//   start + sum(hop times) + i * max(hop time).
void Simulator::start_bulk_circuit(int mi) {
    Message& m = msgs_[mi];
    ChannelState& ch = channels_[m.channel];
    m.bulk = true;
    m.first_start = now_;
    const long n = m.payload;
    if (n == 0) {
        push_event(now_, 3, mi, 0, 0);
        return;
    }
    SimTime sum = 0, tmax = 0;
    for (const Hop& h : ch.hops) {
        sum += token_ns_[h.link];
        tmax = std::max(tmax, token_ns_[h.link]);
    }
    SimTime prefix = 0;
    for (const Hop& h : ch.hops) {
        prefix += token_ns_[h.link];
        rep_.links[h.link].bits += 8 * n;
        rep_.links[h.link].busy_ns += n * token_ns_[h.link];
        chans_[chan_index(h)].wire_free =
            std::max(chans_[chan_index(h)].wire_free, now_ + prefix + (n - 1) * tmax);
    }
    m.bulk_first_arrival = now_ + sum;
    FlowStats& f = rep_.flows[m.flow];
    if (f.payload_tokens_delivered == 0) f.first_payload_delivery = m.bulk_first_arrival;
    f.payload_tokens_delivered += n;
    f.last_payload_delivery = now_ + sum + (n - 1) * tmax;
    push_event(now_ + sum + (n - 1) * tmax, 3, mi, 0, 0);
}

void Simulator::push_ready(int mi, int tok, int hop) {
    const Hop& h = channels_[msgs_[mi].channel].hops[hop];
    int ci = chan_index(h);
    chans_[ci].vc[static_cast<int>(h.vc)].q.push_back(QTok{mi, tok, hop});
    try_serve(ci);
}

void Simulator::try_serve(int ci) {
    DirChan& dc = chans_[ci];
    if (dc.busy) return;  // the completion event re-arms serving

    // A vc is serviceable when a token can claim the link (holder rules) and
    // land downstream (credit), or is on its final hop and gets consumed on
    // arrival. While a packet holds the link only its own next token moves;
    // at packet boundaries channels are arbitrated round-robin.
    int pick_vc = -1;
    size_t pick_pos = 0;
    int order[2] = {dc.rr, 1 - dc.rr};
    for (int oi = 0; oi < 2 && pick_vc < 0; ++oi) {
        int v = order[oi];
        VcState& vs = dc.vc[v];
        if (vs.q.empty()) continue;
        auto eligible = [&](const QTok& qt) {
            bool final_hop =
                qt.hop + 1 == static_cast<int>(channels_[msgs_[qt.msg].channel].hops.size());
            return final_hop || vs.occupancy < p_.credit_tokens;
        };
        if (vs.holder != -1) {
            for (size_t i = 0; i < vs.q.size(); ++i) {
                const QTok& qt = vs.q[i];
                if (msgs_[qt.msg].channel != vs.holder) continue;
                if (vs.current_msg != -1 && qt.msg != vs.current_msg) continue;
                if (eligible(qt)) {
                    pick_vc = v;
                    pick_pos = i;
                }
                break;  // only the holder's in-order head may move
            }
        } else {
            // Cyclic order over channel ids with a fixed virtual modulus, so
            // arbitration among a set of channels does not depend on how many
            // other channels exist elsewhere in the run.
            constexpr int kWrap = 1 << 20;
            int best_key = kWrap + 1;
            std::vector<int> seen;
            for (size_t i = 0; i < vs.q.size(); ++i) {
                int ch = msgs_[vs.q[i].msg].channel;
                if (std::find(seen.begin(), seen.end(), ch) != seen.end()) continue;
                seen.push_back(ch);  // FIFO-first token of this channel
                if (!eligible(vs.q[i])) continue;
                int key = ch > vs.last_served ? ch - vs.last_served
                                              : ch - vs.last_served + kWrap;
                if (key < best_key) {
                    best_key = key;
                    pick_vc = v;
                    pick_pos = i;
                }
            }
        }
    }
    if (pick_vc < 0) return;
    if (dc.is_die) dc.rr = 1 - pick_vc;

    QTok qt = dc.vc[pick_vc].q[pick_pos];
    dc.vc[pick_vc].q.erase(dc.vc[pick_vc].q.begin() + static_cast<long>(pick_pos));
    start_token(ci, pick_vc, qt);
}

void Simulator::start_token(int ci, int vc, const QTok& qt) {
    DirChan& dc = chans_[ci];
    VcState& vs = dc.vc[vc];
    Message& m = msgs_[qt.msg];
    ChannelState& ch = channels_[m.channel];

    vs.holder = m.channel;
    vs.current_msg = qt.msg;
    vs.last_served = m.channel;
    dc.busy = true;
    dc.wire_free = now_ + dc.token_ns;
    if (m.first_start < 0 && qt.hop == 0) m.first_start = now_;

    // Credit consumed upstream: the token leaves the previous hop's buffer.
    if (qt.hop > 0) {
        const Hop& prev = ch.hops[qt.hop - 1];
        DirChan& pc = chans_[chan_index(prev)];
        pc.vc[static_cast<int>(prev.vc)].occupancy--;
        try_serve(chan_index(prev));
    } else if (qt.tok + 1 < m.total) {
        // Next token of this message enters the injection queue.
        push_ready(qt.msg, qt.tok + 1, 0);
    }
    push_event(now_ + dc.token_ns, 1, qt.msg, qt.tok, qt.hop);
}

void Simulator::token_done(int mi, int tok, int hop) {
    Message& m = msgs_[mi];
    ChannelState& ch = channels_[m.channel];
    const Hop& h = ch.hops[hop];
    int ci = chan_index(h);
    DirChan& dc = chans_[ci];
    VcState& vs = dc.vc[static_cast<int>(h.vc)];

    dc.busy = false;
    rep_.links[h.link].bits += 8;
    rep_.links[h.link].busy_ns += dc.token_ns;

    bool last_token = tok + 1 == m.total;
    if (last_token) {
        vs.current_msg = -1;
        if (ch.mode == ChannelMode::Packet) vs.holder = -1;
    }

    bool final_hop = hop + 1 == static_cast<int>(ch.hops.size());
    if (final_hop) {
        bool is_payload = token_kind(tok, m.header, m.payload) == TokenKind::Data;
        if (is_payload) {
            m.delivered_payload++;
            rep_.delivered_bytes += 1;
            rep_.flows[m.flow].delivered_bytes += 1;
            deliver_payload_token(mi, now_);
        }
        if (last_token) complete_message(mi, now_);
    } else {
        vs.occupancy++;
        rep_.max_buffer_occupancy = std::max(rep_.max_buffer_occupancy, vs.occupancy);
        push_ready(mi, tok, hop + 1);
    }
    try_serve(ci);
}

void Simulator::deliver_payload_token(int mi, SimTime at) {
    FlowStats& f = rep_.flows[msgs_[mi].flow];
    if (f.payload_tokens_delivered == 0) f.first_payload_delivery = at;
    f.payload_tokens_delivered++;
    f.last_payload_delivery = at;
}

void Simulator::complete_message(int mi, SimTime delivered_at) {
    Message& m = msgs_[mi];
    ChannelState& ch = channels_[m.channel];
    m.completed = true;
    m.complete_time = delivered_at;
    ch.active_sends--;
    if (ch.mode == ChannelMode::Circuit) ch.established = true;

    FlowStats& f = rep_.flows[m.flow];
    SimTime lat = delivered_at - m.inject_time;
    f.sum_latency_ns += static_cast<double>(lat);
    f.max_latency_ns = std::max(f.max_latency_ns, lat);
    f.last_delivery = std::max(f.last_delivery, delivered_at);
    if (m.first_start >= 0) f.blocked_ns += m.first_start - m.inject_time;

    if (!ch.pending.empty() && ch.active_sends == 0) {
        int next = ch.pending.front();
        ch.pending.pop_front();
        begin_message(next);
    }
}

std::string SimReport::summary_text() const {
    std::ostringstream o;
    o << "wall_ns: " << wall_ns << "\n"
      << "injected_bytes: " << injected_bytes << "\n"
      << "delivered_bytes: " << delivered_bytes << "\n"
      << "in_flight_bytes: " << in_flight_bytes << "\n"
      << "conservation: " << (conservation_ok() ? "ok" : "VIOLATED") << "\n"
      << "flows: " << flows.size() << "\n";
    return o.str();
}

std::string SimReport::flows_csv() const {
    std::ostringstream o;
    o << "channel,src,dst,mode,messages,injected_bytes,delivered_bytes,first_injection_ns,"
         "last_delivery_ns,mean_latency_ns,max_latency_ns,blocked_ns,steady_rate_bits_s\n";
    char buf[64];
    for (const auto& f : flows) {
        o << f.channel << "," << f.src << "," << f.dst << "," << to_string(f.mode) << ","
          << f.messages << "," << f.injected_bytes << "," << f.delivered_bytes << ","
          << f.first_injection << "," << f.last_delivery << ",";
        std::snprintf(buf, sizeof buf, "%.9g", f.mean_latency_ns());
        o << buf << "," << f.max_latency_ns << "," << f.blocked_ns << ",";
        std::snprintf(buf, sizeof buf, "%.9g", f.steady_rate_bits_s());
        o << buf << "\n";
    }
    return o.str();
}

std::string SimReport::nodes_csv(const Topology& t) const {
    std::vector<long> injected(t.core_count(), 0), delivered(t.core_count(), 0);
    std::vector<SimTime> blocked(t.core_count(), 0);
    for (const auto& f : flows) {
        injected[f.src] += f.injected_bytes;
        delivered[f.dst] += f.delivered_bytes;
        blocked[f.src] += f.blocked_ns;
    }
    std::ostringstream o;
    o << "node,injected_bytes,delivered_bytes,blocked_ns\n";
    for (int i = 0; i < t.core_count(); ++i)
        o << to_string(t.node_at(i)) << "," << injected[i] << "," << delivered[i] << ","
          << blocked[i] << "\n";
    return o.str();
}

std::string SimReport::links_csv(const Topology& t) const {
    std::ostringstream o;
    o << "link,node_a,node_b,class,bits,busy_ns,utilization\n";
    char buf[64];
    for (size_t i = 0; i < links.size(); ++i) {
        double util = wall_ns > 0 ? static_cast<double>(links[i].busy_ns) / wall_ns : 0.0;
        o << i << "," << to_string(t.links[i].a) << "," << to_string(t.links[i].b) << ","
          << to_string(t.links[i].cls) << "," << links[i].bits << "," << links[i].busy_ns
          << ",";
        std::snprintf(buf, sizeof buf, "%.6g", util);
        o << buf << "\n";
    }
    return o.str();
}

LatencyEstimate measure_latency(const Topology& t, const AddressMap& addrs,
                                const std::vector<RoutingTable>& tables, const SimParams& p,
                                const NodeId& src, const NodeId& dst, int payload_bytes) {
    if (payload_bytes < 1) throw std::invalid_argument("measure_latency: empty payload");
    LatencyEstimate est;
    est.sync_overhead_ns = p.sync_overhead_ns;
    const int n = payload_bytes;  // one token per byte

    if (src == dst) {
        // Loopback through the core's own switch plus interface serialization
        // (one byte per cycle on and off).
        est.ns = n * p.loopback_cycles * p.cycle_ns + 2.0 * n * p.cycle_ns;
        est.sync_overhead_ns = 0;
        return est;
    }

    Route r = route(t, addrs, tables, src, dst);
    est.hops = static_cast<int>(r.hops.size());
    double sum = 0, tmax = 0;
    for (const Hop& h : r.hops) {
        double tn = token_time_cycles(t.links[h.link]) * p.cycle_ns;
        sum += tn;
        tmax = std::max(tmax, tn);
    }
    double pipeline = sum + (n - 1) * tmax;
    double round_trip = n == 1 ? 2.0 * sum : 0.0;
    est.ns = p.sync_overhead_ns + round_trip + pipeline;
    return est;
}

}  // namespace swallow
