#include "swallow/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace swallow {

int Topology::core_index(const NodeId& n) const {
    return n.slice * 16 + n.device * 2 + n.core;
}

NodeId Topology::node_at(int core_index) const {
    NodeId n;
    n.slice = core_index / 16;
    n.device = (core_index % 16) / 2;
    n.core = core_index % 2;
    return n;
}

int Topology::device_of(const NodeId& n) const {
    // A slice is a 4x2 block of devices; device d occupies in-slice row d/2,
    // column d%2.
    int slice_row = n.slice / slices_x;
    int slice_col = n.slice % slices_x;
    int row = slice_row * 4 + n.device / 2;
    int col = slice_col * 2 + n.device % 2;
    return device_index(row, col);
}

NodeId Topology::node_of(int dev_row, int dev_col, Layer l) const {
    NodeId n;
    n.slice = (dev_row / 4) * slices_x + dev_col / 2;
    n.device = (dev_row % 4) * 2 + dev_col % 2;
    n.core = l == Layer::Vertical ? 0 : 1;
    return n;
}

bool Topology::contains(const NodeId& n) const {
    return n.slice >= 0 && n.slice < slice_count() && n.device >= 0 && n.device < 8 &&
           n.core >= 0 && n.core < 2;
}

int Topology::die_link(const NodeId& n) const {
    return device_links[device_of(n)].die;
}

int Topology::port_link(const NodeId& n, Port p) const {
    Layer l = layer_of(n);
    bool vertical_port = p == Port::North || p == Port::South;
    if (vertical_port != (l == Layer::Vertical)) return -1;
    return device_links[device_of(n)].ext[static_cast<int>(p)];
}

std::vector<int> Topology::link_indices_of(const NodeId& n) const {
    if (!contains(n)) throw NotFoundError("no such node: " + to_string(n));
    std::vector<int> out;
    const DeviceLinks& dl = device_links[device_of(n)];
    if (dl.die >= 0) out.push_back(dl.die);
    if (layer_of(n) == Layer::Vertical) {
        for (Port p : {Port::North, Port::South})
            if (dl.ext[static_cast<int>(p)] >= 0) out.push_back(dl.ext[static_cast<int>(p)]);
    } else {
        for (Port p : {Port::East, Port::West})
            if (dl.ext[static_cast<int>(p)] >= 0) out.push_back(dl.ext[static_cast<int>(p)]);
    }
    return out;
}

std::vector<LinkSpec> Topology::links_of(const NodeId& n) const {
    std::vector<LinkSpec> out;
    for (int i : link_indices_of(n)) out.push_back(links[i]);
    return out;
}

namespace {

LinkSpec make_link(const MachineConfig& cfg, LinkClass cls, NodeId a, NodeId b) {
    const LinkTiming& t = cfg.timing(cls);
    LinkSpec l;
    l.cls = cls;
    l.symbol_delay = t.symbol_delay;
    l.token_delay = t.token_delay;
    l.frame_cycles = t.frame_cycles;
    l.rate_bits_s = cfg.link_rate_bits_s(cls);
    l.energy_pj_per_bit = t.energy_pj_per_bit;
    l.a = a;
    l.b = b;
    return l;
}

}  // namespace

Topology build_topology(int slices_x, int slices_y, const MachineConfig& cfg) {
    if (slices_x < 1 || slices_y < 1)
        throw std::invalid_argument("slice grid must be at least 1x1, got " +
                                    std::to_string(slices_x) + "x" + std::to_string(slices_y));

    Topology t;
    t.slices_x = slices_x;
    t.slices_y = slices_y;
    const int rows = t.device_rows(), cols = t.device_cols();
    t.device_links.resize(static_cast<size_t>(rows) * cols);

    // On-die link inside every package.
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            NodeId v = t.node_of(r, c, Layer::Vertical);
            NodeId h = t.node_of(r, c, Layer::Horizontal);
            t.device_links[t.device_index(r, c)].die = static_cast<int>(t.links.size());
            t.links.push_back(make_link(cfg, LinkClass::OnDie, v, h));
        }

    // Vertical rails: South port of (r,c) to North port of (r+1,c), joining
    // the vertical-layer cores. On-board inside a 4-row slice block,
    // off-board cable across slice boundaries.
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r + 1 < rows; ++r) {
            bool same_board = (r % 4) != 3;
            LinkClass cls = same_board ? LinkClass::OnBoardVertical : LinkClass::OffBoardCable;
            NodeId a = t.node_of(r, c, Layer::Vertical);
            NodeId b = t.node_of(r + 1, c, Layer::Vertical);
            int idx = static_cast<int>(t.links.size());
            t.links.push_back(make_link(cfg, cls, a, b));
            t.device_links[t.device_index(r, c)].ext[static_cast<int>(Port::South)] = idx;
            t.device_links[t.device_index(r + 1, c)].ext[static_cast<int>(Port::North)] = idx;
        }

    // Horizontal rails: East port of (r,c) to West port of (r,c+1), joining
    // the horizontal-layer cores.
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) {
            bool same_board = (c % 2) != 1;
            LinkClass cls = same_board ? LinkClass::OnBoardHorizontal : LinkClass::OffBoardCable;
            NodeId a = t.node_of(r, c, Layer::Horizontal);
            NodeId b = t.node_of(r, c + 1, Layer::Horizontal);
            int idx = static_cast<int>(t.links.size());
            t.links.push_back(make_link(cfg, cls, a, b));
            t.device_links[t.device_index(r, c)].ext[static_cast<int>(Port::East)] = idx;
            t.device_links[t.device_index(r, c + 1)].ext[static_cast<int>(Port::West)] = idx;
        }

    // Wiring overrides: the cables are re-pluggable, so a config may remove
    // default connections or add new ones between free ports.
    for (const auto& w : cfg.wiring) {
        auto in_grid = [&](int r, int c) { return r >= 0 && r < rows && c >= 0 && c < cols; };
        if (!in_grid(w.row_a, w.col_a) || !in_grid(w.row_b, w.col_b))
            throw std::invalid_argument("wiring override names a device outside the grid");
        int da = t.device_index(w.row_a, w.col_a);
        int db = t.device_index(w.row_b, w.col_b);
        if (w.kind == WiringOverride::Kind::Remove) {
            for (int p = 0; p < 4; ++p) {
                int li = t.device_links[da].ext[p];
                if (li < 0) continue;
                const LinkSpec& l = t.links[li];
                int other = t.device_of(l.a) == da ? t.device_of(l.b) : t.device_of(l.a);
                if (other != db) continue;
                t.device_links[da].ext[p] = -1;
                for (int q = 0; q < 4; ++q)
                    if (t.device_links[db].ext[q] == li) t.device_links[db].ext[q] = -1;
                // Mark dead by zeroing endpoints onto the same node; removed
                // links are compacted below.
                t.links[li].rate_bits_s = -1.0;
            }
        } else {
            // Added links join same-orientation ports: vertical pairs use
            // S->N, horizontal pairs use E->W, picked by geometry.
            bool vertical = w.col_a == w.col_b;
            LinkClass cls = w.cls.value_or(vertical ? LinkClass::OffBoardCable
                                                    : LinkClass::OffBoardCable);
            Port pa, pb;
            Layer layer;
            if (vertical) {
                layer = Layer::Vertical;
                pa = w.row_a < w.row_b ? Port::South : Port::North;
                pb = w.row_a < w.row_b ? Port::North : Port::South;
            } else {
                layer = Layer::Horizontal;
                pa = w.col_a < w.col_b ? Port::East : Port::West;
                pb = w.col_a < w.col_b ? Port::West : Port::East;
            }
            if (t.device_links[da].ext[static_cast<int>(pa)] >= 0 ||
                t.device_links[db].ext[static_cast<int>(pb)] >= 0)
                throw std::invalid_argument("wiring add: port already populated");
            NodeId a = t.node_of(w.row_a, w.col_a, layer);
            NodeId b = t.node_of(w.row_b, w.col_b, layer);
            int idx = static_cast<int>(t.links.size());
            t.links.push_back(make_link(cfg, cls, a, b));
            t.device_links[da].ext[static_cast<int>(pa)] = idx;
            t.device_links[db].ext[static_cast<int>(pb)] = idx;
        }
    }

    // Compact removed links, remapping indices.
    if (std::any_of(t.links.begin(), t.links.end(),
                    [](const LinkSpec& l) { return l.rate_bits_s < 0; })) {
        std::vector<int> remap(t.links.size(), -1);
        std::vector<LinkSpec> kept;
        for (size_t i = 0; i < t.links.size(); ++i) {
            if (t.links[i].rate_bits_s < 0) continue;
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(t.links[i]);
        }
        t.links = std::move(kept);
        for (auto& dl : t.device_links) {
            if (dl.die >= 0) dl.die = remap[dl.die];
            for (auto& e : dl.ext)
                if (e >= 0) e = remap[e];
        }
    }

    // Ethernet bridges hang off free South ports on the bottom device row.
    for (const auto& b : cfg.bridges) {
        if (b.device_col < 0 || b.device_col >= cols)
            throw std::invalid_argument("bridge column outside the device grid");
        int dev = t.device_index(rows - 1, b.device_col);
        if (t.device_links[dev].ext[static_cast<int>(Port::South)] >= 0)
            throw std::invalid_argument("bridge: South port already populated");
        NodeId attach = t.node_of(rows - 1, b.device_col, Layer::Vertical);
        LinkSpec l = make_link(cfg, LinkClass::OffBoardCable, attach, attach);
        l.rate_bits_s = std::min(l.rate_bits_s, b.rate_bits_s);
        t.bridge_links.push_back(l);
        t.bridges.push_back(b);
    }

    return t;
}

ValidationReport validate_topology(const Topology& t) {
    ValidationReport rep;
    auto flag = [&](std::string code, std::string msg) {
        rep.findings.push_back({std::move(code), std::move(msg)});
    };

    const int n = t.core_count();

    // Per-core degree and mandatory on-die link.
    for (int i = 0; i < n; ++i) {
        NodeId node = t.node_at(i);
        auto idxs = t.link_indices_of(node);
        int die = 0;
        for (int li : idxs)
            if (t.links[li].cls == LinkClass::OnDie) ++die;
        if (die != 1)
            flag("die-degree", to_string(node) + " has " + std::to_string(die) +
                                   " on-die links, expected 1");
        if (idxs.size() > 12)
            flag("degree", to_string(node) + " exceeds the 12-port switch budget");
    }

    // Link classes and endpoints.
    for (size_t i = 0; i < t.links.size(); ++i) {
        const LinkSpec& l = t.links[i];
        int da = t.device_of(l.a), db = t.device_of(l.b);
        bool same_device = da == db;
        bool same_slice = l.a.slice == l.b.slice;
        switch (l.cls) {
            case LinkClass::OnDie:
                if (!same_device)
                    flag("class", "link " + std::to_string(i) + " marked on-die spans devices");
                break;
            case LinkClass::OnBoardVertical:
            case LinkClass::OnBoardHorizontal:
                if (!same_slice)
                    flag("class", "link " + std::to_string(i) + " marked on-board spans slices");
                break;
            case LinkClass::OffBoardCable:
                if (same_slice)
                    flag("class",
                         "link " + std::to_string(i) + " marked off-board stays on one slice");
                break;
        }
        if (l.rate_bits_s <= 0)
            flag("rate", "link " + std::to_string(i) + " has non-positive rate");
    }

    // Internal links must carry four times the external rate.
    double ext_rate = 0;
    for (const auto& l : t.links)
        if (l.cls != LinkClass::OnDie) ext_rate = std::max(ext_rate, l.rate_bits_s);
    if (ext_rate > 0) {
        for (size_t i = 0; i < t.links.size(); ++i) {
            const LinkSpec& l = t.links[i];
            if (l.cls != LinkClass::OnDie) continue;
            if (std::abs(l.rate_bits_s / ext_rate - 4.0) > 1e-9) {
                flag("rate-hierarchy",
                     "internal bandwidths must exceed external by a factor of four; link " +
                         std::to_string(i) + " gives ratio " +
                         std::to_string(l.rate_bits_s / ext_rate));
                break;
            }
        }
    }

    // Physical connectivity over all populated links.
    if (n > 0) {
        std::vector<std::vector<int>> adj(n);
        for (const auto& l : t.links) {
            int a = t.core_index(l.a), b = t.core_index(l.b);
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int reached = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    ++reached;
                    q.push(v);
                }
        }
        if (reached != n)
            flag("disconnected", std::to_string(n - reached) +
                                     " cores unreachable from " + to_string(t.node_at(0)));
    }

    return rep;
}

std::string ValidationReport::text() const {
    std::ostringstream o;
    if (findings.empty()) {
        o << "topology valid: no findings\n";
        return o.str();
    }
    o << findings.size() << " finding(s)\n";
    for (const auto& f : findings) o << "  [" << f.code << "] " << f.message << "\n";
    return o.str();
}

std::string Topology::adjacency_csv() const {
    std::ostringstream o;
    o << "node_a,node_b,class,rate_bits_s,energy_pj_per_bit,symbol_delay,token_delay\n";
    char buf[64];
    for (const auto& l : links) {
        std::snprintf(buf, sizeof buf, "%.9g", l.rate_bits_s);
        o << to_string(l.a) << "," << to_string(l.b) << "," << to_string(l.cls) << "," << buf
          << ",";
        std::snprintf(buf, sizeof buf, "%.9g", l.energy_pj_per_bit);
        o << buf << "," << l.symbol_delay << "," << l.token_delay << "\n";
    }
    return o.str();
}

std::string Topology::graph_dot() const {
    std::ostringstream o;
    o << "graph swallow {\n  node [shape=box];\n";
    for (int i = 0; i < core_count(); ++i) {
        NodeId n = node_at(i);
        o << "  \"" << to_string(n) << "\" [layer=\"" << to_string(layer_of(n)) << "\"];\n";
    }
    for (const auto& l : links)
        o << "  \"" << to_string(l.a) << "\" -- \"" << to_string(l.b) << "\" [label=\""
          << to_string(l.cls) << "\"];\n";
    for (size_t i = 0; i < bridge_links.size(); ++i)
        o << "  \"bridge" << i << "\" -- \"" << to_string(bridge_links[i].a) << "\";\n";
    o << "}\n";
    return o.str();
}

}  // namespace swallow
