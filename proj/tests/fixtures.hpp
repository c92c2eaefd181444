#pragma once

#include "xci/distribution.hpp"
#include "xci/partition.hpp"
#include "xci/region.hpp"

namespace fixtures {

using xci::BlockPartition;
using xci::FiniteDistribution;
using xci::Point;
using xci::Rat;

inline Rat rat(long num, long den = 1) { return Rat(num) / den; }

inline BlockPartition partition2() { return BlockPartition(2, {0}, {}, {1}); }
inline BlockPartition partition3() { return BlockPartition(3, {0}, {1}, {2}); }

inline FiniteDistribution dist2(
    std::initializer_list<std::pair<std::pair<long, long>, Rat>> atoms) {
    FiniteDistribution::AtomMap map;
    for (const auto& [coords, mass] : atoms) {
        map[Point{Rat(coords.first), Rat(coords.second)}] = mass;
    }
    return FiniteDistribution::from_atoms(2, std::move(map));
}

// Exceedance restriction of the product of u = v = {0:1/2, 2:1/4, 3:1/4}
// at threshold 1; passes every check.
inline FiniteDistribution i1() {
    return dist2({{{0, 2}, rat(1, 6)},
                  {{0, 3}, rat(1, 6)},
                  {{2, 0}, rat(1, 6)},
                  {{3, 0}, rat(1, 6)},
                  {{2, 2}, rat(1, 12)},
                  {{2, 3}, rat(1, 12)},
                  {{3, 2}, rat(1, 12)},
                  {{3, 3}, rat(1, 12)}});
}

// i1 with mass moved between (2,2) and (2,3); fails every check.
inline FiniteDistribution i2() {
    return dist2({{{0, 2}, rat(1, 6)},
                  {{0, 3}, rat(1, 6)},
                  {{2, 0}, rat(1, 6)},
                  {{3, 0}, rat(1, 6)},
                  {{2, 2}, rat(1, 8)},
                  {{2, 3}, rat(1, 24)},
                  {{3, 2}, rat(1, 12)},
                  {{3, 3}, rat(1, 12)}});
}

// Uniform two-arm cross.
inline FiniteDistribution i3() {
    return dist2({{{2, 0}, rat(1, 4)},
                  {{3, 0}, rat(1, 4)},
                  {{0, 2}, rat(1, 4)},
                  {{0, 3}, rat(1, 4)}});
}

// Single A-value support; checks hold vacuously or trivially.
inline FiniteDistribution i4() {
    return dist2({{{2, 0}, rat(1, 2)}, {{2, 3}, rat(1, 2)}});
}

inline xci::Region eh1() { return xci::Region{xci::EHRegion(Rat(1))}; }

} // namespace fixtures
