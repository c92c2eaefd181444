#pragma once

#include "xci/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace xci {

// A point of the d-dimensional state space. Comparison is lexicographic,
// which fixes the canonical ordering used throughout (atom iteration,
// certificate selection, enumeration order).
using Point = std::vector<Rat>;

// Coordinates of a point restricted to one block of a partition,
// in ascending coordinate-index order. An empty block has an empty value.
using BlockValue = std::vector<Rat>;

inline std::string point_str(const Point& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) out += ", ";
        out += rat_str(p[i]);
    }
    out += ")";
    return out;
}

} // namespace xci
