#pragma once

#include "xci/partition.hpp"
#include "xci/point.hpp"

#include <set>
#include <variant>

namespace xci {

enum class BlockClass { L1, L2 };

// L1 iff every coordinate is <= threshold (closed box); L2 otherwise.
// An empty block value is L1.
BlockClass classify_block(const BlockValue& value, const Rat& threshold);

// Points with at least one coordinate strictly above the threshold.
struct EHRegion {
    Rat threshold;
    explicit EHRegion(Rat t);
};

// Union of arms: exactly one block classifies L2 while every other block
// sits at its zero value.
struct CrossRegion {
    BlockPartition partition;
    Rat threshold;
    CrossRegion(BlockPartition p, Rat t);
};

struct ExplicitSet {
    std::set<Point> points;
    explicit ExplicitSet(std::set<Point> pts);
};

using Region = std::variant<EHRegion, CrossRegion, ExplicitSet>;

bool region_contains(const Region& region, const Point& p);

} // namespace xci
