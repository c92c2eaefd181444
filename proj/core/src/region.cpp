#include "xci/region.hpp"

#include "xci/errors.hpp"

#include <algorithm>

namespace xci {

BlockClass classify_block(const BlockValue& value, const Rat& threshold) {
    for (const Rat& coord : value) {
        if (coord > threshold) return BlockClass::L2;
    }
    return BlockClass::L1;
}

EHRegion::EHRegion(Rat t) : threshold(std::move(t)) {
    if (threshold <= 0) {
        throw InputFormatError("region threshold must be positive");
    }
}

CrossRegion::CrossRegion(BlockPartition p, Rat t) : partition(std::move(p)), threshold(std::move(t)) {
    if (threshold <= 0) {
        throw InputFormatError("region threshold must be positive");
    }
}

ExplicitSet::ExplicitSet(std::set<Point> pts) : points(std::move(pts)) {
    if (points.empty()) {
        throw InputFormatError("explicit region must contain at least one point");
    }
}

namespace {

bool is_zero(const BlockValue& value) {
    return std::all_of(value.begin(), value.end(), [](const Rat& c) { return c == 0; });
}

struct ContainsVisitor {
    const Point& p;

    bool operator()(const EHRegion& region) const {
        return std::any_of(p.begin(), p.end(),
                           [&](const Rat& c) { return c > region.threshold; });
    }

    bool operator()(const CrossRegion& region) const {
        if (p.size() != region.partition.dimension()) {
            throw InvalidIndices("point dimension does not match cross region partition");
        }
        int high = 0;
        bool others_zero = true;
        for (Block block : {Block::A, Block::B, Block::C}) {
            BlockValue value = region.partition.value(p, block);
            if (classify_block(value, region.threshold) == BlockClass::L2) {
                ++high;
            } else if (!is_zero(value)) {
                others_zero = false;
            }
        }
        return high == 1 && others_zero;
    }

    bool operator()(const ExplicitSet& region) const { return region.points.count(p) > 0; }
};

} // namespace

bool region_contains(const Region& region, const Point& p) {
    return std::visit(ContainsVisitor{p}, region);
}

} // namespace xci
