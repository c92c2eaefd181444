#include <doctest.h>

#include "fixtures.hpp"
#include "xci/checks.hpp"
#include "xci/errors.hpp"

using namespace xci;
using fixtures::rat;

namespace {

BlockValue bv(long v) { return BlockValue{Rat(v)}; }

} // namespace

TEST_CASE("plain check factorizes or pins the first violating atom") {
    const auto part = fixtures::partition2();

    const CIVerdict bad = check_plain_ci(fixtures::i1(), part);
    CHECK(bad.notion == "plain");
    CHECK_FALSE(bad.holds);
    const auto& t = std::get<ViolatingTriple>(bad.certificate);
    CHECK(t.a == bv(0));
    CHECK(t.b.empty());
    CHECK(t.c == bv(2));
    CHECK_FALSE(t.exceed_coord.has_value());
    CHECK_FALSE(t.rectangle.has_value());

    const CIVerdict good = check_plain_ci(fixtures::i4(), part);
    CHECK(good.holds);
    CHECK(std::holds_alternative<std::monostate>(good.certificate));

    // A genuine product is conditionally independent.
    const FiniteDistribution u = FiniteDistribution::from_atoms(
        1, {{{Rat(0)}, rat(1, 2)}, {{Rat(2)}, rat(1, 2)}});
    CHECK(check_plain_ci(product(u, u), part).holds);
}

TEST_CASE("exceedance check conditions coordinate by coordinate") {
    const auto part = fixtures::partition2();

    CHECK(check_eh_ci(fixtures::i1(), part, Rat(1)).holds);

    const CIVerdict bad = check_eh_ci(fixtures::i2(), part, Rat(1));
    CHECK(bad.notion == "eh");
    CHECK_FALSE(bad.holds);
    const auto& t = std::get<ViolatingTriple>(bad.certificate);
    CHECK(t.a == bv(2));
    CHECK(t.b.empty());
    CHECK(t.c == bv(2));
    REQUIRE(t.exceed_coord.has_value());
    CHECK(*t.exceed_coord == 0);
}

TEST_CASE("exceedance check skips zero-probability exceedances") {
    const auto part = fixtures::partition2();
    // Nothing above the threshold: holds vacuously even without plain CI.
    const FiniteDistribution low =
        fixtures::dist2({{{0, 0}, rat(1, 2)}, {{1, 1}, rat(1, 2)}});
    CHECK_FALSE(check_plain_ci(low, part).holds);
    CHECK(check_eh_ci(low, part, Rat(1)).holds);

    // Only the first coordinate ever exceeds.
    const FiniteDistribution one_sided =
        fixtures::dist2({{{2, 0}, rat(1, 2)}, {{2, 1}, rat(1, 2)}});
    CHECK(check_eh_ci(one_sided, part, Rat(1)).holds);
}

TEST_CASE("inner check scans slabs for nonzero minors") {
    const auto part = fixtures::partition2();
    const Region eh = fixtures::eh1();

    CHECK(check_inner_ci(fixtures::i1(), part, eh).holds);

    const CIVerdict bad = check_inner_ci(fixtures::i2(), part, eh);
    CHECK(bad.notion == "inner");
    CHECK_FALSE(bad.holds);
    const auto& s = std::get<ViolatingSlab>(bad.certificate).slab;
    CHECK(s == Slab{bv(0), bv(2), {}, bv(2), bv(3)});

    // No in-region slabs at all: vacuously true.
    CHECK(check_inner_ci(fixtures::i4(), part, eh).holds);
    const Region cross = Region{CrossRegion(part, Rat(1))};
    CHECK(check_inner_ci(fixtures::i3(), part, cross).holds);
}

TEST_CASE("inner checks require support inside the region") {
    const auto part = fixtures::partition2();
    const Region small = Region{ExplicitSet(std::set<Point>{{Rat(0), Rat(2)}})};
    CHECK_THROWS_AS(check_inner_ci(fixtures::i1(), part, small), SupportOutsideRegion);
    CHECK_THROWS_AS(check_inner_ci_bruteforce(fixtures::i1(), part, small),
                    SupportOutsideRegion);
    const Region cross = Region{CrossRegion(part, Rat(1))};
    CHECK_THROWS_AS(check_inner_ci(fixtures::i1(), part, cross), SupportOutsideRegion);
}

TEST_CASE("bruteforce inner check agrees and names the rectangle") {
    const auto part = fixtures::partition2();
    const Region eh = fixtures::eh1();

    CHECK(check_inner_ci_bruteforce(fixtures::i1(), part, eh).holds);

    const CIVerdict bad = check_inner_ci_bruteforce(fixtures::i2(), part, eh);
    CHECK(bad.notion == "inner-bf");
    CHECK_FALSE(bad.holds);
    const auto& t = std::get<ViolatingTriple>(bad.certificate);
    CHECK(t.a == bv(0));
    CHECK(t.b.empty());
    CHECK(t.c == bv(2));
    CHECK_FALSE(t.exceed_coord.has_value());
    REQUIRE(t.rectangle.has_value());
    CHECK(*t.rectangle ==
          Rectangle{{bv(0), bv(2)}, {BlockValue{}}, {bv(2), bv(3)}});
}

TEST_CASE("slab caps propagate") {
    const auto part = fixtures::partition2();
    CHECK_THROWS_AS(check_inner_ci(fixtures::i1(), part, fixtures::eh1(), 4),
                    EnumerationTooLarge);
    CHECK_THROWS_AS(check_inner_ci_bruteforce(fixtures::i1(), part, fixtures::eh1(), 4),
                    EnumerationTooLarge);
}

TEST_CASE("outer check completes the support pattern or exhibits a cycle") {
    const auto part = fixtures::partition2();

    const CIVerdict good = check_outer_ci(fixtures::i1(), part);
    CHECK(good.notion == "outer");
    CHECK(good.holds);
    CHECK(std::get<WitnessRef>(good.certificate) == WitnessRef{"generic"});

    const CIVerdict bad = check_outer_ci(fixtures::i2(), part);
    CHECK_FALSE(bad.holds);
    const auto& cyc = std::get<InconsistentCycle>(bad.certificate);
    CHECK(cyc.b.empty());
    REQUIRE(cyc.cells.size() == 4);
    CHECK(cyc.cells[0] == CycleCell{bv(2), bv(3)});
    CHECK(cyc.cells[1] == CycleCell{bv(2), bv(2)});
    CHECK(cyc.cells[2] == CycleCell{bv(0), bv(2)});
    CHECK(cyc.cells[3] == CycleCell{bv(0), bv(3)});

    // Single-star slices always complete.
    CHECK(check_outer_ci(fixtures::i4(), part).holds);
    CHECK(check_outer_ci(fixtures::i3(), part).holds);
}

TEST_CASE("reevaluate_certificate replays genuine failures only") {
    const auto part = fixtures::partition2();
    const Rat t(1);
    const FiniteDistribution good = fixtures::i1();
    const FiniteDistribution bad = fixtures::i2();

    // Holds-verdicts never reevaluate as violations.
    CHECK_FALSE(reevaluate_certificate(good, part, t, check_plain_ci(fixtures::i4(), part)));
    CHECK_FALSE(reevaluate_certificate(good, part, t, check_outer_ci(good, part)));

    // Every failing verdict replays on its own distribution.
    CHECK(reevaluate_certificate(good, part, t, check_plain_ci(good, part)));
    CHECK(reevaluate_certificate(bad, part, t, check_eh_ci(bad, part, t)));
    CHECK(reevaluate_certificate(bad, part, t,
                                 check_inner_ci(bad, part, fixtures::eh1())));
    CHECK(reevaluate_certificate(bad, part, t,
                                 check_inner_ci_bruteforce(bad, part, fixtures::eh1())));
    CHECK(reevaluate_certificate(bad, part, t, check_outer_ci(bad, part)));

    // The same certificates are not violations of the unperturbed instance.
    CHECK_FALSE(reevaluate_certificate(good, part, t, check_eh_ci(bad, part, t)));
    CHECK_FALSE(
        reevaluate_certificate(good, part, t, check_inner_ci(bad, part, fixtures::eh1())));
    CHECK_FALSE(reevaluate_certificate(
        good, part, t, check_inner_ci_bruteforce(bad, part, fixtures::eh1())));
    CHECK_FALSE(reevaluate_certificate(good, part, t, check_outer_ci(bad, part)));
}

TEST_CASE("reevaluate_certificate accepts any genuine cycle") {
    const auto part = fixtures::partition2();
    const FiniteDistribution bad = fixtures::i2();

    // A different closed alternating cycle through the high cells.
    const InconsistentCycle square{
        {}, {CycleCell{bv(2), bv(2)}, CycleCell{bv(2), bv(3)},
             CycleCell{bv(3), bv(3)}, CycleCell{bv(3), bv(2)}}};
    CHECK(reevaluate_certificate(bad, part, Rat(1), CIVerdict{"outer", false, square}));
    CHECK_FALSE(reevaluate_certificate(fixtures::i1(), part, Rat(1),
                                       CIVerdict{"outer", false, square}));
}

TEST_CASE("reevaluate_certificate rejects structurally broken certificates") {
    const auto part = fixtures::partition2();
    const FiniteDistribution bad = fixtures::i2();
    const Rat t(1);

    // Odd length.
    const InconsistentCycle odd{
        {}, {CycleCell{bv(2), bv(2)}, CycleCell{bv(2), bv(3)}, CycleCell{bv(3), bv(3)}}};
    CHECK_FALSE(reevaluate_certificate(bad, part, t, CIVerdict{"outer", false, odd}));

    // Broken alternation: consecutive even-index cells must share the A value.
    const InconsistentCycle skewed{
        {}, {CycleCell{bv(2), bv(2)}, CycleCell{bv(3), bv(2)},
             CycleCell{bv(3), bv(3)}, CycleCell{bv(2), bv(3)}}};
    CHECK_FALSE(reevaluate_certificate(bad, part, t, CIVerdict{"outer", false, skewed}));

    // A cell off the support kills the cycle.
    const InconsistentCycle ghost{
        {}, {CycleCell{bv(2), bv(2)}, CycleCell{bv(2), bv(5)},
             CycleCell{bv(3), bv(5)}, CycleCell{bv(3), bv(2)}}};
    CHECK_FALSE(reevaluate_certificate(bad, part, t, CIVerdict{"outer", false, ghost}));

    // A slab with a corner outside the exceedance region is rejected even
    // though its minor is nonzero.
    const FiniteDistribution skew =
        fixtures::dist2({{{0, 0}, rat(1, 2)}, {{0, 2}, rat(1, 4)}, {{2, 0}, rat(1, 4)}});
    const ViolatingSlab out_slab{Slab{bv(0), bv(2), {}, bv(0), bv(2)}};
    CHECK_FALSE(reevaluate_certificate(skew, part, t, CIVerdict{"inner", false, out_slab}));

    // An exceedance triple whose coordinate never exceeds is rejected.
    const ViolatingTriple stale{bv(0), {}, bv(2), 1, {}};
    const FiniteDistribution one_sided =
        fixtures::dist2({{{2, 0}, rat(1, 2)}, {{2, 1}, rat(1, 2)}});
    CHECK_FALSE(
        reevaluate_certificate(one_sided, part, t, CIVerdict{"eh", false, stale}));

    // A rectangle whose product leaves the region is rejected.
    ViolatingTriple boxed{bv(0), {}, bv(0), {}, Rectangle{{bv(0)}, {BlockValue{}}, {bv(0)}}};
    CHECK_FALSE(reevaluate_certificate(skew, part, t, CIVerdict{"inner-bf", false, boxed}));
}
