#include <doctest.h>

#include "fixtures.hpp"
#include "xci/checks.hpp"
#include "xci/errors.hpp"
#include "xci/generators.hpp"

#include <algorithm>

using namespace xci;
using fixtures::rat;

namespace {

BlockValue bv(long v) { return BlockValue{Rat(v)}; }

GridSpec grid22() { return GridSpec{{{Rat(0), Rat(2)}, {Rat(0), Rat(2)}}}; }

Region explicit_grid9() {
    std::set<Point> pts;
    for (long a : {0, 2, 3}) {
        for (long c : {0, 2, 3}) pts.insert({Rat(a), Rat(c)});
    }
    return Region{ExplicitSet(std::move(pts))};
}

} // namespace

TEST_CASE("rng draws are deterministic and bounded") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) {
        const std::size_t x = a.index(17);
        CHECK(x == b.index(17));
        CHECK(x < 17);
    }
    Rng c(123);
    const int w = c.weight();
    CHECK(w >= 1);
    CHECK(w <= 16);
    CHECK_THROWS_AS(c.index(0), InvalidIndices);
}

TEST_CASE("validate_grid_spec rejects malformed grids") {
    CHECK_THROWS_AS(validate_grid_spec(GridSpec{}), InputFormatError);
    CHECK_THROWS_AS(validate_grid_spec(GridSpec{{{}}}), InputFormatError);
    CHECK_THROWS_AS(validate_grid_spec(GridSpec{{{Rat(2), Rat(0)}}}), InputFormatError);
    CHECK_THROWS_AS(validate_grid_spec(GridSpec{{{Rat(0), Rat(0)}}}), InputFormatError);
    CHECK_THROWS_AS(validate_grid_spec(GridSpec{{{Rat(-1), Rat(0)}}}), InputFormatError);
    CHECK_NOTHROW(validate_grid_spec(grid22()));
}

TEST_CASE("random_grid_spec respects ranges and pools") {
    Rng rng(5);
    const auto grid = random_grid_spec(rng, Rat(1), {{2, 4, 1}, {2, 4, 1}});
    REQUIRE(grid.dimension() == 2);
    for (const auto& values : grid.values) {
        CHECK(values.size() >= 2);
        CHECK(values.size() <= 4);
        CHECK(std::any_of(values.begin(), values.end(),
                          [](const Rat& v) { return v > 1; }));
        CHECK(std::is_sorted(values.begin(), values.end()));
    }

    Rng other(5);
    CHECK_THROWS_AS(random_grid_spec(other, Rat(1), {{1, 4, 1}}), InvalidIndices);
    // Two high values cannot fit in a two-value coordinate with min_high 2
    // once one slot is pinned low.
    Rng third(5);
    CHECK_THROWS_AS(random_grid_spec(third, Rat(1), {{2, 2, 2}}), InvalidIndices);
}

TEST_CASE("gen_product_ci is deterministic and passes every check") {
    const auto part = fixtures::partition2();
    const Region eh = fixtures::eh1();
    const GridSpec grid{{{Rat(0), Rat(2), Rat(3)}, {Rat(0), Rat(2), Rat(3)}}};

    const FiniteDistribution d1 = gen_product_ci(42, grid, part, eh);
    const FiniteDistribution d2 = gen_product_ci(42, grid, part, eh);
    CHECK(d1 == d2);
    CHECK(d1 != gen_product_ci(43, grid, part, eh));

    // Support is exactly the in-region part of the grid.
    CHECK(d1.support_size() == 8);
    for (const auto& [point, mass] : d1.atoms()) {
        CHECK(region_contains(eh, point));
    }

    CHECK(check_eh_ci(d1, part, Rat(1)).holds);
    CHECK(check_inner_ci(d1, part, eh).holds);
    CHECK(check_inner_ci_bruteforce(d1, part, eh).holds);
    CHECK(check_outer_ci(d1, part).holds);

    // The unrestricted law factorizes over the partition outright.
    const ProductLawDraw draw = draw_product_ci(42, grid, part, eh);
    CHECK(check_plain_ci(draw.law, part).holds);
    CHECK(draw.restricted == d1);

    CHECK_THROWS_AS(gen_product_ci(42, GridSpec{{{Rat(0), Rat(1)}, {Rat(0), Rat(1)}}},
                                   part, eh),
                    EmptyRegionOnGrid);
    CHECK_THROWS_AS(gen_product_ci(42, grid22(), fixtures::partition3(), eh),
                    InvalidPartition);
}

TEST_CASE("gen_perturbed shifts one minor and keeps slice marginals") {
    const auto part = fixtures::partition2();
    const Region eh = fixtures::eh1();
    const FiniteDistribution y = fixtures::i1();
    const Slab slab{bv(0), bv(2), {}, bv(2), bv(3)};

    const FiniteDistribution z = gen_perturbed(y, part, eh, slab, rat(1, 24));
    CHECK(z.mass({Rat(0), Rat(2)}) == rat(5, 24));
    CHECK(z.mass({Rat(0), Rat(3)}) == rat(1, 8));
    CHECK(z.mass({Rat(2), Rat(2)}) == rat(1, 24));
    CHECK(z.mass({Rat(2), Rat(3)}) == rat(1, 8));
    CHECK(z.mass({Rat(3), Rat(2)}) == rat(1, 12));

    // Row and column sums within the slice survive, so do the marginals.
    CHECK(marginal(z, {0}) == marginal(y, {0}));
    CHECK(marginal(z, {1}) == marginal(y, {1}));

    // The minor moves by epsilon times the corner mass (1/2 here).
    const Rat minor = z.mass({Rat(0), Rat(2)}) * z.mass({Rat(2), Rat(3)}) -
                      z.mass({Rat(0), Rat(3)}) * z.mass({Rat(2), Rat(2)});
    CHECK(minor == rat(1, 48));
    CHECK_FALSE(check_inner_ci(z, part, eh).holds);

    CHECK(gen_perturbed(y, part, eh, slab, Rat(0)) == y);
}

TEST_CASE("gen_perturbed rejects bad slabs and overdrawn mass") {
    const auto part = fixtures::partition2();
    const FiniteDistribution y = fixtures::i1();

    // Mass at (2,3) hits zero.
    const Slab high{bv(2), bv(3), {}, bv(2), bv(3)};
    CHECK_THROWS_AS(gen_perturbed(y, part, fixtures::eh1(), high, rat(1, 12)),
                    MassWouldGoNonpositive);
    CHECK_NOTHROW(gen_perturbed(y, part, fixtures::eh1(), high, rat(1, 13)));

    // A corner outside the region.
    const Slab corner{bv(0), bv(2), {}, bv(0), bv(2)};
    CHECK_THROWS_AS(gen_perturbed(y, part, fixtures::eh1(), corner, rat(1, 100)),
                    SlabNotInSupport);
    // Same slab inside an explicit region, but (0,0) is not an atom of y.
    CHECK_THROWS_AS(gen_perturbed(y, part, explicit_grid9(), corner, rat(1, 100)),
                    SlabNotInSupport);
}

TEST_CASE("gen_cross scatters weighted atoms over the arms") {
    const auto part = fixtures::partition2();
    const Region cross{CrossRegion(part, Rat(1))};

    const FiniteDistribution d = gen_cross(9, part, {2, 0, 2}, Rat(1));
    CHECK(d == gen_cross(9, part, {2, 0, 2}, Rat(1)));
    CHECK(d.support_size() == 4);
    for (const auto& [point, mass] : d.atoms()) {
        CHECK(region_contains(cross, point));
    }

    CHECK(check_eh_ci(d, part, Rat(1)).holds);
    CHECK(check_inner_ci(d, part, cross).holds);
    CHECK(check_inner_ci_bruteforce(d, part, cross).holds);
    CHECK(check_outer_ci(d, part).holds);

    CHECK_THROWS_AS(gen_cross(9, part, {0, 0, 0}, Rat(1)), InvalidIndices);
    CHECK_THROWS_AS(gen_cross(9, part, {1, 1, 1}, Rat(1)), InvalidIndices);
    CHECK_THROWS_AS(gen_cross(9, part, {6, 0, 0}, Rat(1)), InvalidIndices);

    const FiniteDistribution three =
        gen_cross(11, fixtures::partition3(), {2, 1, 2}, Rat(1));
    CHECK(three.support_size() == 5);
    const Region cross3{CrossRegion(fixtures::partition3(), Rat(1))};
    for (const auto& [point, mass] : three.atoms()) {
        CHECK(region_contains(cross3, point));
    }
}

TEST_CASE("gen_pareto_axes discretizes the tail onto the axes") {
    const FiniteDistribution d = gen_pareto_axes({Rat(2), Rat(4)}, rat(1, 2));
    CHECK(d.support_size() == 4);
    for (long v : {2, 4}) {
        CHECK(d.mass({Rat(v), Rat(0)}) == rat(1, 4));
        CHECK(d.mass({Rat(0), Rat(v)}) == rat(1, 4));
    }
    CHECK(check_eh_ci(d, fixtures::partition2(), Rat(1)).holds);

    // Input order does not matter.
    CHECK(gen_pareto_axes({Rat(4), Rat(2)}, rat(1, 2)) == d);

    // Degenerate weights put everything on one axis.
    const FiniteDistribution one_arm = gen_pareto_axes({Rat(2), Rat(4)}, Rat(1));
    CHECK(one_arm.support_size() == 2);
    CHECK(one_arm.mass({Rat(2), Rat(0)}) == rat(1, 2));
    CHECK(one_arm.mass({Rat(4), Rat(0)}) == rat(1, 2));
    const FiniteDistribution other_arm = gen_pareto_axes({Rat(2), Rat(4)}, Rat(0));
    CHECK(other_arm.mass({Rat(0), Rat(2)}) == rat(1, 2));

    CHECK_THROWS_AS(gen_pareto_axes({}, rat(1, 2)), InputFormatError);
    CHECK_THROWS_AS(gen_pareto_axes({Rat(2), Rat(2)}, rat(1, 2)), InputFormatError);
    CHECK_THROWS_AS(gen_pareto_axes({Rat(1), Rat(2)}, rat(1, 2)), InputFormatError);
    CHECK_THROWS_AS(gen_pareto_axes({Rat(2), Rat(4)}, rat(3, 2)), InputFormatError);
    CHECK_THROWS_AS(gen_pareto_axes({Rat(2), Rat(4)}, rat(-1, 2)), InputFormatError);
}
