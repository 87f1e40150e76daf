#include "swallow/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace swallow {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

IniFile IniFile::parse_string(const std::string& text) {
    IniFile f;
    f.raw_ = text;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            f.sections_[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        f.sections_[section].emplace_back(trim(line.substr(0, eq)),
                                          trim(line.substr(eq + 1)));
    }
    return f;
}

IniFile IniFile::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

bool IniFile::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](const auto& kv) { return kv.first == key; });
}

std::string IniFile::get(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return fallback;
    for (const auto& kv : it->second)
        if (kv.first == key) return kv.second;
    return fallback;
}

std::vector<std::string> IniFile::get_all(const std::string& section,
                                          const std::string& key) const {
    std::vector<std::string> out;
    auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (const auto& kv : it->second)
        if (kv.first == key) out.push_back(kv.second);
    return out;
}

long IniFile::get_int(const std::string& section, const std::string& key,
                      long fallback) const {
    if (!has(section, key)) return fallback;
    return std::stol(get(section, key));
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
    if (!has(section, key)) return fallback;
    return std::stod(get(section, key));
}

bool IniFile::get_bool(const std::string& section, const std::string& key,
                       bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get(section, key);
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw std::invalid_argument("config [" + section + "] " + key +
                                ": expected boolean, got '" + v + "'");
}

std::vector<std::string> IniFile::sections() const {
    std::vector<std::string> out;
    for (const auto& s : sections_) out.push_back(s.first);
    return out;
}

const LinkTiming& MachineConfig::timing(LinkClass c) const {
    switch (c) {
        case LinkClass::OnDie: return on_die;
        case LinkClass::OnBoardVertical: return on_board_vertical;
        case LinkClass::OnBoardHorizontal: return on_board_horizontal;
        case LinkClass::OffBoardCable: return off_board;
    }
    return on_die;
}

double MachineConfig::link_rate_bits_s(LinkClass c) const {
    // 8 bits per token over the token period; kept in exact binary arithmetic
    // so the headline rates and ratios come out as round numbers.
    return 8.0e9 / (timing(c).token_cycles() * cycle_ns());
}

namespace {

LinkClass parse_link_class(const std::string& s) {
    if (s == "on_die") return LinkClass::OnDie;
    if (s == "on_board_vertical") return LinkClass::OnBoardVertical;
    if (s == "on_board_horizontal") return LinkClass::OnBoardHorizontal;
    if (s == "off_board") return LinkClass::OffBoardCable;
    throw std::invalid_argument("unknown link class: " + s);
}

void read_timing(const IniFile& ini, const std::string& section, LinkTiming& t) {
    t.symbol_delay = static_cast<int>(ini.get_int(section, "symbol_delay_cycles", t.symbol_delay));
    t.token_delay = static_cast<int>(ini.get_int(section, "token_delay_cycles", t.token_delay));
    t.frame_cycles = static_cast<int>(ini.get_int(section, "frame_cycles", t.frame_cycles));
    t.energy_pj_per_bit = ini.get_double(section, "energy_pj_per_bit", t.energy_pj_per_bit);
    if (t.symbol_delay < 1 || t.token_delay < 1)
        throw std::invalid_argument(section + ": symbol and token delays must be >= 1 cycle");
    if (t.energy_pj_per_bit < 0)
        throw std::invalid_argument(section + ": energy must be >= 0");
}

// "r,c" pair
std::pair<int, int> parse_pos(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected row,col: " + s);
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

}  // namespace

MachineConfig MachineConfig::from_ini(const IniFile& ini) {
    MachineConfig c;
    c.slices_x = static_cast<int>(ini.get_int("machine", "slices_x", c.slices_x));
    c.slices_y = static_cast<int>(ini.get_int("machine", "slices_y", c.slices_y));
    c.switch_clock_mhz = ini.get_double("machine", "switch_clock_mhz", c.switch_clock_mhz);

    read_timing(ini, "link.on_die", c.on_die);
    read_timing(ini, "link.on_board_vertical", c.on_board_vertical);
    read_timing(ini, "link.on_board_horizontal", c.on_board_horizontal);
    read_timing(ini, "link.off_board", c.off_board);

    c.credit_tokens = static_cast<int>(ini.get_int("network", "credit_tokens", c.credit_tokens));
    c.packet_payload_bytes =
        static_cast<int>(ini.get_int("network", "packet_payload_bytes", c.packet_payload_bytes));
    c.sync_overhead_ns = ini.get_double("network", "sync_overhead_ns", c.sync_overhead_ns);

    PowerProfile& p = c.power;
    p.static_mw = ini.get_double("power", "static_mw", p.static_mw);
    p.dyn_mw_per_mhz = ini.get_double("power", "dyn_mw_per_mhz", p.dyn_mw_per_mhz);
    p.idle_f0_mhz = ini.get_double("power", "idle_f0_mhz", p.idle_f0_mhz);
    p.idle_p0_mw = ini.get_double("power", "idle_p0_mw", p.idle_p0_mw);
    p.idle_f1_mhz = ini.get_double("power", "idle_f1_mhz", p.idle_f1_mhz);
    p.idle_p1_mw = ini.get_double("power", "idle_p1_mw", p.idle_p1_mw);
    p.v_ref = ini.get_double("power", "v_ref", p.v_ref);
    p.v_f0_mhz = ini.get_double("power", "v_f0_mhz", p.v_f0_mhz);
    p.v_at_f0 = ini.get_double("power", "v_at_f0", p.v_at_f0);
    p.v_f1_mhz = ini.get_double("power", "v_f1_mhz", p.v_f1_mhz);
    p.v_at_f1 = ini.get_double("power", "v_at_f1", p.v_at_f1);
    p.static_v_exponent =
        static_cast<int>(ini.get_int("power", "static_v_exponent", p.static_v_exponent));
    p.wall_overhead = ini.get_double("power", "wall_overhead", p.wall_overhead);
    p.psu_fraction = ini.get_double("power", "psu_fraction", p.psu_fraction);
    p.compute_fraction = ini.get_double("power", "compute_fraction", p.compute_fraction);
    p.waste_fraction = ini.get_double("power", "waste_fraction", p.waste_fraction);
    p.network_fraction = ini.get_double("power", "network_fraction", p.network_fraction);

    c.memory.total_bytes = ini.get_int("memory", "total_bytes", c.memory.total_bytes);
    c.memory.reserved_code = ini.get_int("memory", "reserved_code", c.memory.reserved_code);
    c.memory.reserved_os = ini.get_int("memory", "reserved_os", c.memory.reserved_os);

    c.neuron.state_bytes = ini.get_int("neuron", "state_bytes", c.neuron.state_bytes);
    c.neuron.event_buffer_bytes =
        ini.get_int("neuron", "event_buffer_bytes", c.neuron.event_buffer_bytes);
    c.neuron.shared_code_bytes =
        ini.get_int("neuron", "shared_code_bytes", c.neuron.shared_code_bytes);
    c.neuron.stack_bytes_per_copy =
        ini.get_int("neuron", "stack_bytes_per_copy", c.neuron.stack_bytes_per_copy);
    c.neuron.connectivity = ini.get_double("neuron", "connectivity", c.neuron.connectivity);

    // [bridge] south = <device_col> [rate_bits_s]
    for (const auto& v : ini.get_all("bridge", "south")) {
        std::istringstream in(v);
        BridgeSpec b;
        in >> b.device_col;
        double rate;
        if (in >> rate) b.rate_bits_s = rate;
        c.bridges.push_back(b);
    }

    // [wiring] remove = r1,c1 r2,c2     add = r1,c1 r2,c2 [class]
    for (const char* kind : {"remove", "add"}) {
        for (const auto& v : ini.get_all("wiring", kind)) {
            std::istringstream in(v);
            std::string a, b, cls;
            in >> a >> b;
            WiringOverride w;
            w.kind = std::string(kind) == "add" ? WiringOverride::Kind::Add
                                                : WiringOverride::Kind::Remove;
            std::tie(w.row_a, w.col_a) = parse_pos(a);
            std::tie(w.row_b, w.col_b) = parse_pos(b);
            if (in >> cls) w.cls = parse_link_class(cls);
            c.wiring.push_back(w);
        }
    }
    return c;
}

MachineConfig MachineConfig::load(const std::string& path) {
    return from_ini(IniFile::parse_file(path));
}

std::string MachineConfig::canonical_text() const {
    std::ostringstream o;
    o << "[machine]\nslices_x = " << slices_x << "\nslices_y = " << slices_y
      << "\nswitch_clock_mhz = " << switch_clock_mhz << "\n";
    auto tim = [&](const char* name, const LinkTiming& t) {
        o << "[link." << name << "]\nsymbol_delay_cycles = " << t.symbol_delay
          << "\ntoken_delay_cycles = " << t.token_delay
          << "\nframe_cycles = " << t.frame_cycles
          << "\nenergy_pj_per_bit = " << t.energy_pj_per_bit << "\n";
    };
    tim("on_die", on_die);
    tim("on_board_vertical", on_board_vertical);
    tim("on_board_horizontal", on_board_horizontal);
    tim("off_board", off_board);
    o << "[network]\ncredit_tokens = " << credit_tokens
      << "\npacket_payload_bytes = " << packet_payload_bytes
      << "\nsync_overhead_ns = " << sync_overhead_ns << "\n";
    o << "[power]\nstatic_mw = " << power.static_mw
      << "\ndyn_mw_per_mhz = " << power.dyn_mw_per_mhz
      << "\nidle = " << power.idle_f0_mhz << ":" << power.idle_p0_mw << ","
      << power.idle_f1_mhz << ":" << power.idle_p1_mw
      << "\nv = " << power.v_f0_mhz << ":" << power.v_at_f0 << "," << power.v_f1_mhz
      << ":" << power.v_at_f1 << "\nv_ref = " << power.v_ref
      << "\nstatic_v_exponent = " << power.static_v_exponent
      << "\nwall_overhead = " << power.wall_overhead << "\n";
    o << "[memory]\ntotal_bytes = " << memory.total_bytes
      << "\nreserved_code = " << memory.reserved_code
      << "\nreserved_os = " << memory.reserved_os << "\n";
    o << "[neuron]\nstate_bytes = " << neuron.state_bytes
      << "\nevent_buffer_bytes = " << neuron.event_buffer_bytes
      << "\nshared_code_bytes = " << neuron.shared_code_bytes
      << "\nstack_bytes_per_copy = " << neuron.stack_bytes_per_copy
      << "\nconnectivity = " << neuron.connectivity << "\n";
    for (const auto& b : bridges)
        o << "[bridge]\nsouth = " << b.device_col << " " << b.rate_bits_s << "\n";
    for (const auto& w : wiring) {
        o << "[wiring]\n"
          << (w.kind == WiringOverride::Kind::Add ? "add" : "remove") << " = "
          << w.row_a << "," << w.col_a << " " << w.row_b << "," << w.col_b;
        if (w.cls) o << " " << to_string(*w.cls);
        o << "\n";
    }
    return o.str();
}

std::uint64_t MachineConfig::hash() const { return fnv1a64(canonical_text()); }

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace swallow
