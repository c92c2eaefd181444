#pragma once

#include "xci/distribution.hpp"
#include "xci/enumeration.hpp"
#include "xci/region.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace xci {

// Deterministic generator for the seeded families. Draws use plain modulo
// reduction instead of std::uniform_int_distribution, whose output is
// implementation-defined; the same seed must reproduce the same instances
// on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform-ish draw in [0, n), n > 0.
    std::size_t index(std::size_t n);

    // Random positive integer weight in [1, 16].
    int weight() { return 1 + static_cast<int>(index(16)); }

    // Raw 64-bit draw, for deriving sub-seeds.
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Per-coordinate sorted value lists; the product of the lists is the grid.
struct GridSpec {
    std::vector<std::vector<Rat>> values;

    std::size_t dimension() const { return values.size(); }
};

// Throws InputFormatError unless every coordinate has a nonempty, strictly
// ascending list of nonnegative values.
void validate_grid_spec(const GridSpec& grid);

// Random grid drawing, one range per coordinate. Low values come from
// {0, t/2, t} and high values from {t+1/2, t+1, t+2, 2t+2}, so a coordinate
// holds at most 3 low and at most 4 high values.
struct CoordinateRange {
    std::size_t min_values = 2;
    std::size_t max_values = 4;
    std::size_t min_high = 1;
};

GridSpec random_grid_spec(Rng& rng, const Rat& threshold,
                          const std::vector<CoordinateRange>& ranges);

// A seeded product law m(b) f_b(a) g_b(c) on the grid together with its
// restriction to the region. When the region is an exceedance region, the
// A-side factor is shared across all below-threshold B-values; see
// build_prop1_witness for the normalization identity that relies on this.
struct ProductLawDraw {
    FiniteDistribution law;
    FiniteDistribution restricted;
};

ProductLawDraw draw_product_ci(std::uint64_t seed, const GridSpec& grid,
                               const BlockPartition& partition, const Region& region);

// The restricted law from draw_product_ci. Satisfies every independence
// check by construction. Throws EmptyRegionOnGrid when no grid point lies
// in the region.
FiniteDistribution gen_product_ci(std::uint64_t seed, const GridSpec& grid,
                                  const BlockPartition& partition, const Region& region);

// Moves epsilon across the four corners of a slab with signs (+,-,-,+), so
// every marginal within the B-slice is preserved while the slab's 2x2 minor
// shifts by epsilon times the total corner mass. All four corners must be
// atoms inside the region (SlabNotInSupport) and must keep positive mass
// (MassWouldGoNonpositive).
FiniteDistribution gen_perturbed(const FiniteDistribution& y, const BlockPartition& partition,
                                 const Region& region, const Slab& slab, const Rat& epsilon);

// Cross-supported law: arm_atoms[k] atoms on the arm of block k (A, B, C),
// each arm value drawn with all block coordinates above the threshold and
// every other coordinate zero. Masses are normalized random weights.
FiniteDistribution gen_cross(std::uint64_t seed, const BlockPartition& partition,
                             const std::array<std::size_t, 3>& arm_atoms, const Rat& threshold);

// Two independent standard Pareto tails discretized on tail_grid and pushed
// onto the two axes of the plane: atom (x_i, 0) gets arm_weight times the
// cell probability 1/x_i - 1/x_{i+1} (last cell 1/x_n), atom (0, x_i) the
// complementary weight, everything rescaled to total mass 1.
FiniteDistribution gen_pareto_axes(const std::vector<Rat>& tail_grid, const Rat& arm_weight);

} // namespace xci
