#pragma once

#include "xci/enumeration.hpp"
#include "xci/partition.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace xci {

// A triple (a,b,c) at which P(a,b,c)*P_B(b) != P_AB(a,b)*P_BC(b,c). When the
// violation lives in a conditioned table, exceed_coord (0-based) or rectangle
// records the conditioning event.
struct ViolatingTriple {
    BlockValue a;
    BlockValue b;
    BlockValue c;
    std::optional<std::size_t> exceed_coord;
    std::optional<Rectangle> rectangle;

    friend bool operator==(const ViolatingTriple& x, const ViolatingTriple& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.exceed_coord == y.exceed_coord &&
               x.rectangle == y.rectangle;
    }
};

struct ViolatingSlab {
    Slab slab;

    friend bool operator==(const ViolatingSlab& x, const ViolatingSlab& y) {
        return x.slab == y.slab;
    }
};

struct CycleCell {
    BlockValue a;
    BlockValue c;

    friend bool operator==(const CycleCell& x, const CycleCell& y) {
        return x.a == y.a && x.c == y.c;
    }
};

// Closed alternating cycle of support cells within one B-slice whose
// alternating mass products differ; cells[0] is the closing (non-tree) edge,
// followed by the tree path from its A-endpoint to its C-endpoint.
struct InconsistentCycle {
    BlockValue b;
    std::vector<CycleCell> cells;

    friend bool operator==(const InconsistentCycle& x, const InconsistentCycle& y) {
        return x.b == y.b && x.cells == y.cells;
    }
};

// Marker that a verified witness is constructible (outer check, holds=true).
struct WitnessRef {
    std::string method;

    friend bool operator==(const WitnessRef& x, const WitnessRef& y) {
        return x.method == y.method;
    }
};

using Certificate =
    std::variant<std::monostate, ViolatingTriple, ViolatingSlab, InconsistentCycle, WitnessRef>;

struct CIVerdict {
    std::string notion;
    bool holds = false;
    Certificate certificate;
};

} // namespace xci
