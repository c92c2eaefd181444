#pragma once

#include "xci/partition.hpp"
#include "xci/point.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace xci {

// A finitely supported probability distribution with exact rational masses.
// Atoms are kept in a sorted map, so iteration order is the canonical
// lexicographic order of support points.
class FiniteDistribution {
public:
    using AtomMap = std::map<Point, Rat>;

    // Validates that every point has the stated dimension, every mass is
    // positive, and the masses sum to exactly 1.
    static FiniteDistribution from_atoms(std::size_t dimension, AtomMap atoms);

    std::size_t dimension() const { return dimension_; }
    const AtomMap& atoms() const { return atoms_; }
    std::size_t support_size() const { return atoms_.size(); }

    // Mass of a single point, 0 if the point is not an atom.
    Rat mass(const Point& p) const;
    bool contains(const Point& p) const { return atoms_.count(p) > 0; }

    friend bool operator==(const FiniteDistribution& x, const FiniteDistribution& y) {
        return x.dimension_ == y.dimension_ && x.atoms_ == y.atoms_;
    }

private:
    FiniteDistribution(std::size_t dimension, AtomMap atoms)
        : dimension_(dimension), atoms_(std::move(atoms)) {}

    std::size_t dimension_;
    AtomMap atoms_;
};

// Support as a point set.
std::set<Point> support(const FiniteDistribution& dist);

// Marginal distribution on a nonempty subset of coordinates. The resulting
// coordinates keep their relative order.
FiniteDistribution marginal(const FiniteDistribution& dist, std::vector<std::size_t> coords);

// Conditional distribution given an event. Throws ZeroProbabilityEvent when
// the event carries no mass. Dimension is unchanged.
FiniteDistribution condition(const FiniteDistribution& dist,
                             const std::function<bool(const Point&)>& event);
FiniteDistribution condition(const FiniteDistribution& dist, const std::set<Point>& event);

// Conditional distribution given {coordinate > threshold} (0-based coordinate).
FiniteDistribution condition_exceedance(const FiniteDistribution& dist, std::size_t coord,
                                        const Rat& threshold);

// Independent product; coordinates of y follow those of x.
FiniteDistribution product(const FiniteDistribution& x, const FiniteDistribution& y);

// Independent product of a nonempty list of factors, coordinates concatenated
// in list order.
FiniteDistribution product(const std::vector<FiniteDistribution>& factors);

// Pushforward of the distribution under the block split. Since blocks need not
// be contiguous, this is the joint law of (Y_A, Y_B, Y_C) as block values.
std::map<BlockTriple, Rat> block_project(const FiniteDistribution& dist,
                                         const BlockPartition& partition);

// Distinct values of one block over the support, in ascending order.
std::vector<BlockValue> observed_values(const FiniteDistribution& dist,
                                        const BlockPartition& partition, Block block);

} // namespace xci
