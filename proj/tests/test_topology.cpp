#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>
#include <set>

#include "swallow/topology.hpp"

using namespace swallow;

namespace {

// Reachability oracle over the raw link list, independent of links_of.
int reachable_cores(const Topology& t, int skip_link = -1) {
    int n = t.core_count();
    std::vector<std::vector<int>> adj(n);
    for (size_t i = 0; i < t.links.size(); ++i) {
        if (static_cast<int>(i) == skip_link) continue;
        adj[t.core_index(t.links[i].a)].push_back(t.core_index(t.links[i].b));
        adj[t.core_index(t.links[i].b)].push_back(t.core_index(t.links[i].a));
    }
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
    }
    return count;
}

}  // namespace

TEST_CASE("single slice machine has sixteen cores on eight devices") {
    Topology t = build_topology(1, 1);
    CHECK(t.core_count() == 16);
    CHECK(t.device_count() == 8);
    CHECK(t.slice_count() == 1);
}

TEST_CASE("5x6 slices give the 480-core machine") {
    Topology t = build_topology(5, 6);
    CHECK(t.core_count() == 480);
    CHECK(t.device_count() == 240);
}

TEST_CASE("zero or negative dimensions are rejected") {
    CHECK_THROWS_AS(build_topology(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_topology(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_topology(-2, 3), std::invalid_argument);
}

TEST_CASE("every device has exactly one on-die link between its two cores") {
    Topology t = build_topology(1, 1);
    for (int d = 0; d < 8; ++d) {
        NodeId c0{0, d, 0}, c1{0, d, 1};
        int die = 0;
        for (const auto& l : t.links_of(c0)) {
            if (l.cls != LinkClass::OnDie) continue;
            ++die;
            CHECK(((l.a == c0 && l.b == c1) || (l.a == c1 && l.b == c0)));
        }
        CHECK(die == 1);
        int die1 = 0;
        for (const auto& l : t.links_of(c1))
            if (l.cls == LinkClass::OnDie) ++die1;
        CHECK(die1 == 1);
    }
}

TEST_CASE("layer parity: the two cores of a device sit on opposite layers") {
    Topology t = build_topology(2, 2);
    for (int d = 0; d < t.device_count(); ++d) {
        NodeId a = t.node_at(d * 2), b = t.node_at(d * 2 + 1);
        CHECK(Topology::layer_of(a) != Topology::layer_of(b));
    }
}

TEST_CASE("core and device counts scale with slices") {
    for (auto [sx, sy] : {std::pair{1, 1}, {2, 1}, {2, 2}, {4, 2}, {5, 6}}) {
        Topology t = build_topology(sx, sy);
        CHECK(t.core_count() == 16 * sx * sy);
        CHECK(t.device_count() == 8 * sx * sy);
    }
}

TEST_CASE("link symmetry: a link appears in links_of of both endpoints") {
    Topology t = build_topology(2, 2);
    for (size_t li = 0; li < t.links.size(); ++li) {
        auto ia = t.link_indices_of(t.links[li].a);
        auto ib = t.link_indices_of(t.links[li].b);
        CHECK(std::count(ia.begin(), ia.end(), static_cast<int>(li)) == 1);
        CHECK(std::count(ib.begin(), ib.end(), static_cast<int>(li)) == 1);
    }
}

TEST_CASE("rate hierarchy: on-die 500 Mbit/s, external 125 Mbit/s, ratio four") {
    Topology t = build_topology(2, 2);
    for (const auto& l : t.links) {
        if (l.cls == LinkClass::OnDie)
            CHECK(l.rate_bits_s == doctest::Approx(500e6));
        else
            CHECK(l.rate_bits_s == doctest::Approx(125e6));
    }
}

TEST_CASE("physical graph is connected for all required sizes") {
    for (auto [sx, sy] : {std::pair{1, 1}, {2, 1}, {2, 2}, {4, 2}, {5, 6}}) {
        Topology t = build_topology(sx, sy);
        CHECK(reachable_cores(t) == t.core_count());
    }
}

TEST_CASE("slice link budget matches the board: 10 on-board links per slice") {
    Topology t = build_topology(1, 1);
    int on_board = 0, on_die = 0, off_board = 0;
    for (const auto& l : t.links) {
        if (l.cls == LinkClass::OnDie) ++on_die;
        else if (l.cls == LinkClass::OffBoardCable) ++off_board;
        else ++on_board;
    }
    CHECK(on_die == 8);
    CHECK(on_board == 10);  // 6 vertical + 4 horizontal inside the 4x2 board
    CHECK(off_board == 0);
}

TEST_CASE("links_of: interior vs corner, port budget, unknown node") {
    Topology t = build_topology(5, 6);
    // Interior device: vertical core carries die + N + S, horizontal core
    // die + E + W; matches enumeration from the construction rules.
    NodeId interior_v = t.node_of(10, 5, Layer::Vertical);
    NodeId interior_h = t.node_of(10, 5, Layer::Horizontal);
    CHECK(t.links_of(interior_v).size() == 3);
    CHECK(t.links_of(interior_h).size() == 3);
    std::set<LinkClass> classes;
    for (const auto& l : t.links_of(interior_v)) classes.insert(l.cls);
    CHECK(classes.count(LinkClass::OnDie) == 1);

    // Corner device cores have fewer external links.
    NodeId corner_v = t.node_of(0, 0, Layer::Vertical);
    NodeId corner_h = t.node_of(0, 0, Layer::Horizontal);
    CHECK(t.links_of(corner_v).size() == 2);   // die + S only
    CHECK(t.links_of(corner_h).size() == 2);   // die + E only

    for (int i = 0; i < t.core_count(); ++i)
        CHECK(t.links_of(t.node_at(i)).size() <= 12);

    CHECK_THROWS_AS(t.links_of(NodeId{99, 0, 0}), NotFoundError);
}

TEST_CASE("validate: constructor output is clean") {
    Topology t = build_topology(2, 2);
    CHECK(validate_topology(t).empty());
    Topology big = build_topology(5, 6);
    CHECK(validate_topology(big).empty());
}

TEST_CASE("validate: removed links flag a potential disconnection") {
    // Unplug both cables crossing the slice boundary of a 1x2 machine; the
    // two boards fall apart.
    MachineConfig cfg;
    cfg.slices_x = 1;
    cfg.slices_y = 2;
    cfg.wiring.push_back({WiringOverride::Kind::Remove, 3, 0, 4, 0, {}});
    cfg.wiring.push_back({WiringOverride::Kind::Remove, 3, 1, 4, 1, {}});
    Topology cut = build_topology(1, 2, cfg);
    ValidationReport rep = validate_topology(cut);
    bool disconnected = false;
    for (const auto& f : rep.findings)
        if (f.code == "disconnected") disconnected = true;
    CHECK(disconnected);
    CHECK(reachable_cores(cut) == 16);  // half the machine from core 0
}

TEST_CASE("validate: a device without its on-die link is flagged") {
    Topology t = build_topology(1, 1);
    t.device_links[0].die = -1;
    ValidationReport rep = validate_topology(t);
    bool flagged = false;
    for (const auto& f : rep.findings)
        if (f.code == "die-degree") flagged = true;
    CHECK(flagged);
}

TEST_CASE("validate: on-die rate equal to external flags the factor-four rule") {
    Topology t = build_topology(1, 1);
    for (auto& l : t.links)
        if (l.cls == LinkClass::OnDie) l.rate_bits_s = 125e6;
    ValidationReport rep = validate_topology(t);
    bool flagged = false;
    for (const auto& f : rep.findings)
        if (f.code == "rate-hierarchy") flagged = true;
    CHECK(flagged);
}

TEST_CASE("wiring overrides remove and add links") {
    MachineConfig cfg;
    cfg.wiring.push_back({WiringOverride::Kind::Remove, 0, 0, 0, 1, {}});
    Topology t = build_topology(1, 1, cfg);
    NodeId h00 = t.node_of(0, 0, Layer::Horizontal);
    for (const auto& l : t.links_of(h00)) CHECK(l.cls != LinkClass::OnBoardHorizontal);
    // Removing one rail leaves the graph connected via the other rows.
    CHECK(reachable_cores(t) == 16);
}

TEST_CASE("bridges attach to free south ports with an 80 Mbit/s cap") {
    MachineConfig cfg;
    cfg.bridges.push_back({0, 80e6});
    Topology t = build_topology(1, 1, cfg);
    REQUIRE(t.bridge_links.size() == 1);
    CHECK(t.bridge_links[0].rate_bits_s == doctest::Approx(80e6));
    CHECK(t.bridges.size() == 1);
    // Default build carries none.
    CHECK(build_topology(1, 1).bridges.empty());
}

TEST_CASE("adjacency export is deterministic and carries every link") {
    Topology t = build_topology(2, 1);
    std::string a = t.adjacency_csv();
    std::string b = t.adjacency_csv();
    CHECK(a == b);
    size_t lines = std::count(a.begin(), a.end(), '\n');
    CHECK(lines == t.links.size() + 1);
    CHECK(t.graph_dot().find("graph swallow") == 0);
}

TEST_CASE("config: ini round trip and hashing") {
    std::string text =
        "# test\n[machine]\nslices_x = 2\nslices_y = 3\n\n[link.off_board]\n"
        "energy_pj_per_bit = 6000\n\n[network]\ncredit_tokens = 4\n";
    MachineConfig cfg = MachineConfig::from_ini(IniFile::parse_string(text));
    CHECK(cfg.slices_x == 2);
    CHECK(cfg.slices_y == 3);
    CHECK(cfg.off_board.energy_pj_per_bit == doctest::Approx(6000));
    CHECK(cfg.credit_tokens == 4);
    CHECK(cfg.on_die.energy_pj_per_bit == doctest::Approx(1.63));
    CHECK(cfg.hash() != MachineConfig::defaults().hash());
    CHECK(MachineConfig::defaults().hash() == MachineConfig::defaults().hash());
}
