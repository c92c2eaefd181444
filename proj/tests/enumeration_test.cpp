#include <doctest.h>

#include "fixtures.hpp"
#include "xci/distribution.hpp"
#include "xci/enumeration.hpp"
#include "xci/errors.hpp"

using namespace xci;

namespace {

BlockValue bv(long v) { return BlockValue{Rat(v)}; }

} // namespace

TEST_CASE("enumerate_slabs lists in-region slabs in canonical order") {
    const auto supp = support(fixtures::i1());
    const auto slabs = enumerate_slabs(supp, fixtures::partition2(), fixtures::eh1());
    REQUIRE(slabs.size() == 5);
    CHECK(slabs[0] == Slab{bv(0), bv(2), {}, bv(2), bv(3)});
    CHECK(slabs[1] == Slab{bv(0), bv(3), {}, bv(2), bv(3)});
    CHECK(slabs[2] == Slab{bv(2), bv(3), {}, bv(0), bv(2)});
    CHECK(slabs[3] == Slab{bv(2), bv(3), {}, bv(0), bv(3)});
    CHECK(slabs[4] == Slab{bv(2), bv(3), {}, bv(2), bv(3)});
    // The pair {0,2} x {0,2} has a corner at the origin, outside the region.
    for (const Slab& s : slabs) {
        CHECK_FALSE((s.a == bv(0) && s.c == bv(0)));
    }
}

TEST_CASE("slab cap counts candidates before region filtering") {
    const auto supp = support(fixtures::i1());
    // 3 a-pairs x 1 b x 3 c-pairs = 9 candidates, 5 of which survive.
    CHECK_THROWS_AS(
        enumerate_slabs(supp, fixtures::partition2(), fixtures::eh1(), 8),
        EnumerationTooLarge);
    CHECK(enumerate_slabs(supp, fixtures::partition2(), fixtures::eh1(), 9).size() == 5);
}

TEST_CASE("cross regions admit no slabs") {
    const Region cross = Region{CrossRegion(fixtures::partition2(), Rat(1))};
    CHECK(enumerate_slabs(support(fixtures::i3()), fixtures::partition2(), cross).empty());
}

TEST_CASE("enumerate_rectangles keeps products inside the region") {
    const auto supp = support(fixtures::i1());
    const auto rects = enumerate_rectangles(supp, fixtures::partition2(), fixtures::eh1());
    // Low A is compatible only with high C subsets (4 * 3); high-A subsets
    // pair with every nonempty C subset (3 * 7).
    CHECK(rects.size() == 33);
    // Bitmask-ascending order puts A = {0}, C = {2} first.
    CHECK(rects[0] == Rectangle{{bv(0)}, {BlockValue{}}, {bv(2)}});
    CHECK(rects[1] == Rectangle{{bv(0)}, {BlockValue{}}, {bv(3)}});
    CHECK(rects[2] == Rectangle{{bv(0)}, {BlockValue{}}, {bv(2), bv(3)}});
    for (const Rectangle& r : rects) {
        CHECK_FALSE((r.a_values.front() == bv(0) && r.c_values.front() == bv(0)));
    }
}

TEST_CASE("rectangle cap bounds the candidate count") {
    const auto supp = support(fixtures::i1());
    // 7 A-subsets x 1 B-subset x 7 C-subsets = 49 candidates.
    CHECK_THROWS_AS(
        enumerate_rectangles(supp, fixtures::partition2(), fixtures::eh1(), 48),
        EnumerationTooLarge);
    CHECK(enumerate_rectangles(supp, fixtures::partition2(), fixtures::eh1(), 49).size() == 33);
}

TEST_CASE("rectangle enumeration refuses 63 or more block values") {
    std::set<Point> supp;
    for (long i = 0; i < 63; ++i) supp.insert({Rat(i + 2), Rat(2)});
    CHECK_THROWS_AS(
        enumerate_rectangles(supp, fixtures::partition2(), fixtures::eh1()),
        EnumerationTooLarge);
}
