#include "xci/distribution.hpp"

#include "xci/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace xci {

FiniteDistribution FiniteDistribution::from_atoms(std::size_t dimension, AtomMap atoms) {
    if (atoms.empty()) {
        throw InputFormatError("distribution must have at least one atom");
    }
    Rat total = 0;
    for (const auto& [point, mass] : atoms) {
        if (point.size() != dimension) {
            throw InputFormatError("atom " + point_str(point) + " does not have dimension " +
                                   std::to_string(dimension));
        }
        for (const Rat& coord : point) {
            if (coord < 0) {
                throw InputFormatError("atom " + point_str(point) +
                                       " has a negative coordinate");
            }
        }
        if (mass <= 0) {
            throw InputFormatError("atom " + point_str(point) + " has non-positive mass " +
                                   rat_str(mass));
        }
        total += mass;
    }
    if (total != 1) {
        throw InputFormatError("atom masses sum to " + rat_str(total) + ", expected 1");
    }
    return FiniteDistribution(dimension, std::move(atoms));
}

Rat FiniteDistribution::mass(const Point& p) const {
    auto it = atoms_.find(p);
    return it == atoms_.end() ? Rat(0) : it->second;
}

std::set<Point> support(const FiniteDistribution& dist) {
    std::set<Point> out;
    for (const auto& [point, mass] : dist.atoms()) out.insert(point);
    return out;
}

FiniteDistribution marginal(const FiniteDistribution& dist, std::vector<std::size_t> coords) {
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    if (coords.empty()) {
        throw InvalidIndices("marginal needs at least one coordinate");
    }
    for (std::size_t c : coords) {
        if (c >= dist.dimension()) {
            throw InvalidIndices("marginal coordinate " + std::to_string(c) +
                                 " out of range for dimension " + std::to_string(dist.dimension()));
        }
    }

    FiniteDistribution::AtomMap atoms;
    for (const auto& [point, mass] : dist.atoms()) {
        Point projected;
        projected.reserve(coords.size());
        for (std::size_t c : coords) projected.push_back(point[c]);
        atoms[projected] += mass;
    }
    return FiniteDistribution::from_atoms(coords.size(), std::move(atoms));
}

FiniteDistribution condition(const FiniteDistribution& dist,
                             const std::function<bool(const Point&)>& event) {
    FiniteDistribution::AtomMap atoms;
    Rat total = 0;
    for (const auto& [point, mass] : dist.atoms()) {
        if (event(point)) {
            atoms[point] = mass;
            total += mass;
        }
    }
    if (total == 0) {
        throw ZeroProbabilityEvent("conditioning event has probability zero");
    }
    for (auto& [point, mass] : atoms) mass /= total;
    return FiniteDistribution::from_atoms(dist.dimension(), std::move(atoms));
}

FiniteDistribution condition(const FiniteDistribution& dist, const std::set<Point>& event) {
    return condition(dist, [&event](const Point& p) { return event.count(p) > 0; });
}

FiniteDistribution condition_exceedance(const FiniteDistribution& dist, std::size_t coord,
                                        const Rat& threshold) {
    if (coord >= dist.dimension()) {
        throw InvalidIndices("exceedance coordinate " + std::to_string(coord) +
                             " out of range for dimension " + std::to_string(dist.dimension()));
    }
    return condition(dist, [coord, &threshold](const Point& p) { return p[coord] > threshold; });
}

FiniteDistribution product(const FiniteDistribution& x, const FiniteDistribution& y) {
    FiniteDistribution::AtomMap atoms;
    for (const auto& [px, mx] : x.atoms()) {
        for (const auto& [py, my] : y.atoms()) {
            Point joint = px;
            joint.insert(joint.end(), py.begin(), py.end());
            atoms[joint] = mx * my;
        }
    }
    return FiniteDistribution::from_atoms(x.dimension() + y.dimension(), std::move(atoms));
}

FiniteDistribution product(const std::vector<FiniteDistribution>& factors) {
    if (factors.empty()) {
        throw InvalidIndices("product needs at least one factor");
    }
    FiniteDistribution out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = product(out, factors[i]);
    }
    return out;
}

std::map<BlockTriple, Rat> block_project(const FiniteDistribution& dist,
                                         const BlockPartition& partition) {
    if (partition.dimension() != dist.dimension()) {
        throw InvalidPartition("partition dimension does not match distribution");
    }
    std::map<BlockTriple, Rat> out;
    for (const auto& [point, mass] : dist.atoms()) {
        out[partition.split(point)] += mass;
    }
    return out;
}

std::vector<BlockValue> observed_values(const FiniteDistribution& dist,
                                        const BlockPartition& partition, Block block) {
    if (partition.dimension() != dist.dimension()) {
        throw InvalidPartition("partition dimension does not match distribution");
    }
    std::set<BlockValue> values;
    for (const auto& [point, mass] : dist.atoms()) {
        values.insert(partition.value(point, block));
    }
    return std::vector<BlockValue>(values.begin(), values.end());
}

} // namespace xci
