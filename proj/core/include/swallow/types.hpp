#ifndef SWALLOW_TYPES_HPP
#define SWALLOW_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace swallow {

using SimTime = std::int64_t;  // nanoseconds

// One processor. A slice carries 8 dual-core packages = 16 cores; core 0 of
// every package sits on the vertical routing layer, core 1 on the horizontal.
struct NodeId {
    int slice = 0;
    int device = 0;  // 0..7 within the slice
    int core = 0;    // 0..1 within the device

    friend bool operator==(const NodeId&, const NodeId&) = default;
    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

enum class Layer { Vertical, Horizontal };

enum class LinkClass { OnDie, OnBoardVertical, OnBoardHorizontal, OffBoardCable };

inline const char* to_string(LinkClass c) {
    switch (c) {
        case LinkClass::OnDie: return "on_die";
        case LinkClass::OnBoardVertical: return "on_board_vertical";
        case LinkClass::OnBoardHorizontal: return "on_board_horizontal";
        case LinkClass::OffBoardCable: return "off_board";
    }
    return "?";
}

inline const char* to_string(Layer l) {
    return l == Layer::Vertical ? "vertical" : "horizontal";
}

inline std::string to_string(const NodeId& n) {
    return "s" + std::to_string(n.slice) + ".d" + std::to_string(n.device) +
           ".c" + std::to_string(n.core);
}

// Machine exceeds a hard architectural bound (e.g. the 16-bit address space).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A lookup named something that does not exist in the machine.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace swallow

#endif
