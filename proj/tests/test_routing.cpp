#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>
#include <random>
#include <set>

#include "swallow/routing.hpp"

using namespace swallow;

namespace {

struct Machine {
    Topology t;
    AddressMap addrs;
    std::vector<RoutingTable> tables;
    explicit Machine(int sx, int sy)
        : t(build_topology(sx, sy)),
          addrs(assign_addresses(t)),
          tables(generate_tables(t, addrs)) {}
};

// BFS over the physical links: reachability and shortest-path oracle,
// independent of the table machinery.
std::vector<int> bfs_dist(const Topology& t, int src) {
    std::vector<std::vector<int>> adj(t.core_count());
    for (const auto& l : t.links) {
        adj[t.core_index(l.a)].push_back(t.core_index(l.b));
        adj[t.core_index(l.b)].push_back(t.core_index(l.a));
    }
    std::vector<int> dist(t.core_count(), -1);
    std::queue<int> q;
    q.push(src);
    dist[src] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist;
}

}  // namespace

TEST_CASE("one slice: sixteen distinct addresses, layer bit splits each device") {
    Machine m(1, 1);
    std::set<std::uint16_t> seen(m.addrs.by_core.begin(), m.addrs.by_core.end());
    CHECK(seen.size() == 16);
    for (int d = 0; d < 8; ++d) {
        std::uint16_t a = m.addrs.by_core[d * 2], b = m.addrs.by_core[d * 2 + 1];
        CHECK((a ^ b) == 1);  // only the layer bit differs
    }
}

TEST_CASE("480-core machine fits 16 address bits") {
    Machine m(5, 6);
    CHECK(m.addrs.plan.total_bits() <= 16);
    std::set<std::uint16_t> seen(m.addrs.by_core.begin(), m.addrs.by_core.end());
    CHECK(static_cast<int>(seen.size()) == 480);
}

TEST_CASE("a machine too large for 16 bits reports capacity exceeded") {
    // 8192 slice rows -> 32768 device rows worth of vertical index.
    Topology t = build_topology(1, 1);
    t.slices_y = 8192;
    t.slices_x = 4;
    CHECK_THROWS_AS(assign_addresses(t), CapacityError);
}

TEST_CASE("same row, same layer shares the vertical-field prefix") {
    Machine m(2, 2);
    const AddressPlan& p = m.addrs.plan;
    NodeId a = m.t.node_of(3, 0, Layer::Vertical);
    NodeId b = m.t.node_of(3, 2, Layer::Vertical);
    std::uint16_t aa = m.addrs.of(m.t, a), ab = m.addrs.of(m.t, b);
    CHECK((aa >> (p.h_bits + 1)) == (ab >> (p.h_bits + 1)));
    // Same device column, different rows: vertical prefixes differ.
    NodeId c = m.t.node_of(5, 0, Layer::Vertical);
    CHECK((aa >> (p.h_bits + 1)) != (m.addrs.of(m.t, c) >> (p.h_bits + 1)));
}

TEST_CASE("every destination matches exactly one effective table entry") {
    Machine m(2, 2);
    const int total = m.addrs.plan.total_bits();
    for (const auto& tab : m.tables) {
        for (std::uint16_t addr : m.addrs.by_core) {
            int matches = 0;
            int best_len = -1;
            for (const auto& e : tab.entries)
                if ((addr >> (total - e.length)) == e.prefix) {
                    if (e.length > best_len) best_len = e.length;
                    ++matches;
                }
            CHECK(matches >= 1);
            // Effective entry is the longest; check it is unique at that length.
            int at_best = 0;
            for (const auto& e : tab.entries)
                if (e.length == best_len && (addr >> (total - e.length)) == e.prefix)
                    ++at_best;
            CHECK(at_best == 1);
        }
        // Entries are ordered longest-first.
        for (size_t i = 1; i < tab.entries.size(); ++i)
            CHECK(tab.entries[i - 1].length >= tab.entries[i].length);
    }
}

TEST_CASE("every table carries a local delivery entry for its own address") {
    Machine m(1, 1);
    const int total = m.addrs.plan.total_bits();
    for (int i = 0; i < m.t.core_count(); ++i) {
        const TableEntry* e = m.tables[i].lookup(m.addrs.by_core[i], total);
        REQUIRE(e != nullptr);
        CHECK(e->out == OutDir::Local);
    }
}

TEST_CASE("route: src == dst is empty; device partners take one on-die hop") {
    Machine m(1, 1);
    NodeId n{0, 3, 0}, p{0, 3, 1};
    Route self = route(m.t, m.addrs, m.tables, n, n);
    CHECK(self.hops.empty());
    CHECK(self.layer_transitions == 0);
    Route partner = route(m.t, m.addrs, m.tables, n, p);
    CHECK(partner.hops.size() == 1);
    CHECK(m.t.links[partner.hops[0].link].cls == LinkClass::OnDie);
    CHECK(partner.layer_transitions == 0);  // delivery, not a transition
    CHECK(partner.hops[0].vc == Vc::Delivery);
}

TEST_CASE("horizontal-layer source to a different row and column crosses layers twice") {
    Machine m(2, 2);
    NodeId src = m.t.node_of(1, 1, Layer::Horizontal);
    for (Layer dl : {Layer::Horizontal, Layer::Vertical}) {
        NodeId dst = m.t.node_of(5, 3, dl);
        Route r = route(m.t, m.addrs, m.tables, src, dst);
        CHECK(r.layer_transitions == 2);
    }
}

TEST_CASE("vertical-layer source, same column: zero transitions, matches BFS") {
    Machine m(2, 2);
    NodeId src = m.t.node_of(0, 2, Layer::Vertical);
    NodeId dst = m.t.node_of(6, 2, Layer::Vertical);
    Route r = route(m.t, m.addrs, m.tables, src, dst);
    CHECK(r.layer_transitions == 0);
    auto dist = bfs_dist(m.t, m.t.core_index(src));
    CHECK(static_cast<int>(r.hops.size()) == dist[m.t.core_index(dst)]);
    for (const Hop& h : r.hops) CHECK(m.t.links[h.link].cls != LinkClass::OnDie);
}

TEST_CASE("all pairs on a 4-slice machine terminate at the destination") {
    Machine m(2, 2);
    auto dist0 = bfs_dist(m.t, 0);
    for (int d : dist0) CHECK(d >= 0);  // oracle: physically connected
    for (int s = 0; s < m.t.core_count(); ++s) {
        for (int d = 0; d < m.t.core_count(); ++d) {
            Route r = route(m.t, m.addrs, m.tables, m.t.node_at(s), m.t.node_at(d));
            // Walk the hops and confirm arrival.
            NodeId cur = m.t.node_at(s);
            for (const Hop& h : r.hops) {
                const LinkSpec& l = m.t.links[h.link];
                cur = h.dir == 0 ? l.b : l.a;
            }
            CHECK(m.t.core_index(cur) == d);
            CHECK(r.layer_transitions <= 2);
        }
    }
}

TEST_CASE("route determinism: identical inputs give identical routes") {
    Machine m(2, 2);
    NodeId a = m.t.node_of(0, 0, Layer::Horizontal);
    NodeId b = m.t.node_of(7, 3, Layer::Vertical);
    Route r1 = route(m.t, m.addrs, m.tables, a, b);
    Route r2 = route(m.t, m.addrs, m.tables, a, b);
    REQUIRE(r1.hops.size() == r2.hops.size());
    for (size_t i = 0; i < r1.hops.size(); ++i) {
        CHECK(r1.hops[i].link == r2.hops[i].link);
        CHECK(r1.hops[i].dir == r2.hops[i].dir);
    }
}

TEST_CASE("dimension order: no vertical hop after horizontal movement begins") {
    Machine m(2, 2);
    for (int s = 0; s < m.t.core_count(); s += 3) {
        for (int d = 0; d < m.t.core_count(); d += 5) {
            Route r = route(m.t, m.addrs, m.tables, m.t.node_at(s), m.t.node_at(d));
            bool horizontal_seen = false;
            for (const Hop& h : r.hops) {
                LinkClass c = m.t.links[h.link].cls;
                bool is_v = c == LinkClass::OnBoardVertical ||
                            (c == LinkClass::OffBoardCable &&
                             Topology::layer_of(m.t.links[h.link].a) == Layer::Vertical);
                bool is_h = c == LinkClass::OnBoardHorizontal ||
                            (c == LinkClass::OffBoardCable &&
                             Topology::layer_of(m.t.links[h.link].a) == Layer::Horizontal);
                if (is_h) horizontal_seen = true;
                if (is_v) CHECK(!horizontal_seen);
            }
        }
    }
}

TEST_CASE("all-pairs deliverability for the required slice counts") {
    for (auto [sx, sy] : {std::pair{1, 1}, {2, 1}, {2, 2}, {4, 2}}) {
        Machine m(sx, sy);
        VerificationReport rep = verify_tables(m.t, m.addrs, m.tables);
        CHECK(rep.deliverable);
        CHECK(rep.max_layer_transitions <= 2);
        CHECK(rep.cdg_acyclic);
    }
}

TEST_CASE("naive mesh tables ignoring layers are not fully connected") {
    Topology t = build_topology(2, 2);
    AddressMap addrs = assign_addresses(t);
    auto naive = generate_tables(t, addrs, RoutingStrategy::NaiveXY);
    VerificationReport rep = verify_tables(t, addrs, naive);
    CHECK(!rep.deliverable);
    CHECK(rep.undeliverable_pairs > 0);
    CHECK(!rep.first_failure.empty());
}

TEST_CASE("verification histogram covers the configured channels") {
    Machine m(1, 1);
    VerificationReport rep = verify_tables(m.t, m.addrs, m.tables);
    CHECK(rep.channel_load.size() == m.t.links.size() * 2);
    long total = 0;
    for (long l : rep.channel_load) total += l;
    CHECK(total > 0);
    CHECK(rep.histogram_csv(m.t).find("link,dir") == 0);
}

TEST_CASE("table dump and load round-trips and re-verifies identically") {
    Machine m(2, 1);
    std::string csv = tables_csv(m.t, m.addrs, m.tables);
    auto loaded = tables_from_csv(m.t, csv);
    VerificationReport a = verify_tables(m.t, m.addrs, m.tables);
    VerificationReport b = verify_tables(m.t, m.addrs, loaded);
    CHECK(a.deliverable == b.deliverable);
    CHECK(a.max_layer_transitions == b.max_layer_transitions);
    CHECK(a.cdg_acyclic == b.cdg_acyclic);
    CHECK(tables_csv(m.t, m.addrs, loaded) == csv);
}

TEST_CASE("property: sampled machines keep addresses bijective and routes bounded") {
    std::mt19937_64 rng(2026);
    for (auto [sx, sy] :
         {std::pair{3, 2}, {1, 4}, {4, 1}, {3, 3}, {2, 5}, {6, 2}, {1, 7}}) {
        Machine m(sx, sy);
        std::set<std::uint16_t> seen(m.addrs.by_core.begin(), m.addrs.by_core.end());
        CHECK(static_cast<int>(seen.size()) == m.t.core_count());
        CHECK(m.addrs.plan.total_bits() <= 16);
        // Random pairs: termination at the destination, bounded transitions,
        // hop count within the dimension-order bound.
        for (int k = 0; k < 200; ++k) {
            int s = static_cast<int>(rng() % m.t.core_count());
            int d = static_cast<int>(rng() % m.t.core_count());
            Route r = route(m.t, m.addrs, m.tables, m.t.node_at(s), m.t.node_at(d));
            NodeId cur = m.t.node_at(s);
            for (const Hop& h : r.hops)
                cur = h.dir == 0 ? m.t.links[h.link].b : m.t.links[h.link].a;
            CHECK(m.t.core_index(cur) == d);
            CHECK(r.layer_transitions <= 2);
            int rows = m.t.device_rows(), cols = m.t.device_cols();
            CHECK(static_cast<int>(r.hops.size()) <= rows + cols + 3);
        }
    }
}

TEST_CASE("table lookup miss names the switch") {
    Machine m(1, 1);
    // Strip a table down to just the self entry so remote lookups dead-end.
    auto broken = m.tables;
    NodeId victim{0, 0, 0};
    auto& tab = broken[m.t.core_index(victim)];
    tab.entries.resize(1);
    try {
        route(m.t, m.addrs, broken, victim, NodeId{0, 7, 1});
        CHECK(false);
    } catch (const SimError& e) {
        CHECK(std::string(e.what()).find(to_string(victim)) != std::string::npos);
    }
}
