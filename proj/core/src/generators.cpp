#include "xci/generators.hpp"

#include "xci/errors.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace xci {

std::size_t Rng::index(std::size_t n) {
    if (n == 0) {
        throw InvalidIndices("random index over an empty range");
    }
    return static_cast<std::size_t>(engine_() % n);
}

void validate_grid_spec(const GridSpec& grid) {
    if (grid.values.empty()) {
        throw InputFormatError("grid has no coordinates");
    }
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        const auto& list = grid.values[i];
        if (list.empty()) {
            throw InputFormatError("grid coordinate " + std::to_string(i) + " has no values");
        }
        for (std::size_t j = 0; j < list.size(); ++j) {
            if (list[j] < 0) {
                throw InputFormatError("grid coordinate " + std::to_string(i) +
                                       " has a negative value");
            }
            if (j > 0 && list[j] <= list[j - 1]) {
                throw InputFormatError("grid coordinate " + std::to_string(i) +
                                       " values must be strictly ascending");
            }
        }
    }
}

namespace {

// All tuples with the k-th entry drawn from lists[k], in lexicographic order.
std::vector<BlockValue> cartesian(const std::vector<std::vector<Rat>>& lists) {
    std::vector<BlockValue> out{BlockValue{}};
    for (const auto& list : lists) {
        std::vector<BlockValue> next;
        next.reserve(out.size() * list.size());
        for (const auto& prefix : out) {
            for (const Rat& v : list) {
                BlockValue ext = prefix;
                ext.push_back(v);
                next.push_back(std::move(ext));
            }
        }
        out = std::move(next);
    }
    return out;
}

template <typename T>
std::vector<T> sample_without_replacement(Rng& rng, std::vector<T> pool, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        std::swap(pool[i], pool[i + rng.index(pool.size() - i)]);
    }
    pool.resize(n);
    return pool;
}

std::vector<Rat> random_law(Rng& rng, std::size_t n) {
    std::vector<Rat> out(n);
    Rat total = 0;
    for (Rat& x : out) {
        x = rng.weight();
        total += x;
    }
    for (Rat& x : out) x /= total;
    return out;
}

std::vector<BlockValue> block_grid_values(const GridSpec& grid, const BlockPartition& partition,
                                          Block block) {
    std::vector<std::vector<Rat>> lists;
    for (std::size_t coord : partition.indices(block)) {
        lists.push_back(grid.values[coord]);
    }
    return cartesian(lists);
}

} // namespace

GridSpec random_grid_spec(Rng& rng, const Rat& threshold,
                          const std::vector<CoordinateRange>& ranges) {
    if (threshold <= 0) {
        throw InputFormatError("threshold must be positive");
    }
    const std::vector<Rat> lows = {Rat(0), threshold / 2, threshold};
    const std::vector<Rat> highs = {threshold + Rat(1, 2), threshold + 1, threshold + 2,
                                    2 * threshold + 2};

    GridSpec grid;
    for (const CoordinateRange& range : ranges) {
        if (range.min_values < 2 || range.max_values < range.min_values) {
            throw InvalidIndices("coordinate range needs 2 <= min_values <= max_values");
        }
        const std::size_t size = range.min_values + rng.index(range.max_values -
                                                              range.min_values + 1);
        const std::size_t high_lo = std::max(range.min_high,
                                             size > lows.size() ? size - lows.size() : 0);
        const std::size_t high_hi = std::min(highs.size(), size - 1);
        if (high_lo > high_hi) {
            throw InvalidIndices("coordinate range cannot be satisfied by the value pools");
        }
        const std::size_t num_high = high_lo + rng.index(high_hi - high_lo + 1);

        std::vector<Rat> values = sample_without_replacement(rng, lows, size - num_high);
        for (Rat& v : sample_without_replacement(rng, highs, num_high)) {
            values.push_back(std::move(v));
        }
        std::sort(values.begin(), values.end());
        grid.values.push_back(std::move(values));
    }
    validate_grid_spec(grid);
    return grid;
}

ProductLawDraw draw_product_ci(std::uint64_t seed, const GridSpec& grid,
                               const BlockPartition& partition, const Region& region) {
    validate_grid_spec(grid);
    if (grid.dimension() != partition.dimension()) {
        throw InvalidPartition("grid dimension does not match partition");
    }

    const auto avals = block_grid_values(grid, partition, Block::A);
    const auto bvals = block_grid_values(grid, partition, Block::B);
    const auto cvals = block_grid_values(grid, partition, Block::C);

    Rng rng(seed);
    const std::vector<Rat> b_weights = random_law(rng, bvals.size());
    const std::vector<Rat> f_shared = random_law(rng, avals.size());

    // Below-threshold B-slices share one A-side factor; above-threshold
    // slices draw their own. Only exceedance regions distinguish the two.
    const auto* eh = std::get_if<EHRegion>(&region);
    std::vector<std::vector<Rat>> f(bvals.size()), g(bvals.size());
    for (std::size_t bi = 0; bi < bvals.size(); ++bi) {
        const bool own_factor =
            eh != nullptr && classify_block(bvals[bi], eh->threshold) == BlockClass::L2;
        f[bi] = own_factor ? random_law(rng, avals.size()) : f_shared;
        g[bi] = random_law(rng, cvals.size());
    }

    FiniteDistribution::AtomMap atoms;
    for (std::size_t bi = 0; bi < bvals.size(); ++bi) {
        for (std::size_t ai = 0; ai < avals.size(); ++ai) {
            for (std::size_t ci = 0; ci < cvals.size(); ++ci) {
                atoms[partition.assemble(avals[ai], bvals[bi], cvals[ci])] =
                    b_weights[bi] * f[bi][ai] * g[bi][ci];
            }
        }
    }
    FiniteDistribution law = FiniteDistribution::from_atoms(partition.dimension(),
                                                            std::move(atoms));
    try {
        FiniteDistribution restricted =
            condition(law, [&region](const Point& p) { return region_contains(region, p); });
        return ProductLawDraw{std::move(law), std::move(restricted)};
    } catch (const ZeroProbabilityEvent&) {
        throw EmptyRegionOnGrid("no grid point lies in the region");
    }
}

FiniteDistribution gen_product_ci(std::uint64_t seed, const GridSpec& grid,
                                  const BlockPartition& partition, const Region& region) {
    return draw_product_ci(seed, grid, partition, region).restricted;
}

FiniteDistribution gen_perturbed(const FiniteDistribution& y, const BlockPartition& partition,
                                 const Region& region, const Slab& slab, const Rat& epsilon) {
    const Point corners[4] = {
        partition.assemble(slab.a, slab.b, slab.c),
        partition.assemble(slab.a, slab.b, slab.c_prime),
        partition.assemble(slab.a_prime, slab.b, slab.c),
        partition.assemble(slab.a_prime, slab.b, slab.c_prime),
    };
    for (const Point& p : corners) {
        if (!region_contains(region, p)) {
            throw SlabNotInSupport("slab corner " + point_str(p) + " lies outside the region");
        }
        if (!y.contains(p)) {
            throw SlabNotInSupport("slab corner " + point_str(p) + " is not an atom");
        }
    }

    FiniteDistribution::AtomMap atoms = y.atoms();
    atoms[corners[0]] += epsilon;
    atoms[corners[3]] += epsilon;
    atoms[corners[1]] -= epsilon;
    atoms[corners[2]] -= epsilon;
    for (const Point& p : corners) {
        if (atoms[p] <= 0) {
            throw MassWouldGoNonpositive("perturbation drives the mass at " + point_str(p) +
                                         " to " + rat_str(atoms[p]));
        }
    }
    return FiniteDistribution::from_atoms(y.dimension(), std::move(atoms));
}

FiniteDistribution gen_cross(std::uint64_t seed, const BlockPartition& partition,
                             const std::array<std::size_t, 3>& arm_atoms, const Rat& threshold) {
    const Region cross{CrossRegion(partition, threshold)};
    if (arm_atoms[0] + arm_atoms[1] + arm_atoms[2] == 0) {
        throw InvalidIndices("at least one arm must be nonempty");
    }

    const std::vector<Rat> pool = {threshold + Rat(1, 2), threshold + 1, threshold + Rat(3, 2),
                                   threshold + 2, threshold + Rat(5, 2)};
    constexpr Block kBlocks[3] = {Block::A, Block::B, Block::C};

    Rng rng(seed);
    FiniteDistribution::AtomMap atoms;
    Rat total = 0;
    for (int k = 0; k < 3; ++k) {
        const std::size_t n = arm_atoms[k];
        if (n == 0) continue;
        const auto& coords = partition.indices(kBlocks[k]);
        if (coords.empty()) {
            throw InvalidIndices("an empty block cannot host an arm");
        }
        std::vector<BlockValue> combos =
            cartesian(std::vector<std::vector<Rat>>(coords.size(), pool));
        if (n > combos.size()) {
            throw InvalidIndices("arm asks for more atoms than the value pool offers");
        }

        const BlockValue zero_a(partition.indices(Block::A).size(), Rat(0));
        const BlockValue zero_b(partition.indices(Block::B).size(), Rat(0));
        const BlockValue zero_c(partition.indices(Block::C).size(), Rat(0));
        for (BlockValue& value : sample_without_replacement(rng, std::move(combos), n)) {
            Point p;
            switch (kBlocks[k]) {
            case Block::A: p = partition.assemble(value, zero_b, zero_c); break;
            case Block::B: p = partition.assemble(zero_a, value, zero_c); break;
            case Block::C: p = partition.assemble(zero_a, zero_b, value); break;
            }
            const Rat mass = rng.weight();
            atoms[p] = mass;
            total += mass;
        }
    }
    for (auto& [point, mass] : atoms) mass /= total;
    return FiniteDistribution::from_atoms(partition.dimension(), std::move(atoms));
}

FiniteDistribution gen_pareto_axes(const std::vector<Rat>& tail_grid, const Rat& arm_weight) {
    if (tail_grid.empty()) {
        throw InputFormatError("tail grid must be nonempty");
    }
    std::vector<Rat> xs = tail_grid;
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
        throw InputFormatError("tail grid values must be distinct");
    }
    if (xs.front() <= 1) {
        throw InputFormatError("tail grid values must be greater than 1");
    }
    if (arm_weight < 0 || arm_weight > 1) {
        throw InputFormatError("arm weight must lie in [0, 1]");
    }

    // Pareto cell probabilities 1/x_i - 1/x_{i+1} (last cell 1/x_n) sum to
    // 1/x_1, so scaling by x_1 normalizes the law.
    FiniteDistribution::AtomMap atoms;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Rat cell = (i + 1 < xs.size() ? Rat(1) / xs[i] - Rat(1) / xs[i + 1]
                                            : Rat(1) / xs[i]);
        const Rat scaled = cell * xs.front();
        if (arm_weight > 0) atoms[Point{xs[i], Rat(0)}] = arm_weight * scaled;
        if (arm_weight < 1) atoms[Point{Rat(0), xs[i]}] = (1 - arm_weight) * scaled;
    }
    return FiniteDistribution::from_atoms(2, std::move(atoms));
}

} // namespace xci
