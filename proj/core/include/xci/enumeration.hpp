#pragma once

#include "xci/partition.hpp"
#include "xci/region.hpp"

#include <cstddef>
#include <limits>
#include <set>
#include <vector>

namespace xci {

inline constexpr std::size_t kUnlimitedEnumeration = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultRectangleCap = 1'000'000;

// 2x2x1 product rectangle {a,a'} x {b} x {c,c'} with a < a', c < c'.
struct Slab {
    BlockValue a;
    BlockValue a_prime;
    BlockValue b;
    BlockValue c;
    BlockValue c_prime;

    friend bool operator==(const Slab& x, const Slab& y) {
        return x.a == y.a && x.a_prime == y.a_prime && x.b == y.b && x.c == y.c &&
               x.c_prime == y.c_prime;
    }
};

// Product rectangle S_A x S_B x S_C; each list is a nonempty sorted set of
// block values.
struct Rectangle {
    std::vector<BlockValue> a_values;
    std::vector<BlockValue> b_values;
    std::vector<BlockValue> c_values;

    friend bool operator==(const Rectangle& x, const Rectangle& y) {
        return x.a_values == y.a_values && x.b_values == y.b_values && x.c_values == y.c_values;
    }
};

// All slabs over block values observed in the support whose four assembled
// points lie in the region. Ordered by (a-pair, b, c-pair), each ascending.
// The cap bounds the candidate count before region filtering.
std::vector<Slab> enumerate_slabs(const std::set<Point>& support, const BlockPartition& partition,
                                  const Region& region,
                                  std::size_t cap = kUnlimitedEnumeration);

// All rectangles over observed block values whose full Cartesian product lies
// in the region. Subsets are enumerated bitmask-ascending over the sorted
// observed values, ordered by (A-mask, B-mask, C-mask).
std::vector<Rectangle> enumerate_rectangles(const std::set<Point>& support,
                                            const BlockPartition& partition, const Region& region,
                                            std::size_t cap = kDefaultRectangleCap);

} // namespace xci
