#pragma once

#include "xci/distribution.hpp"
#include "xci/verdict.hpp"

#include <map>
#include <variant>

namespace xci::detail {

// Per-B-slice factor assignment with f_b(a)*g_b(c) = mass(a,b,c) on every
// support atom, or the inconsistent cycle that rules one out.
struct SliceFactors {
    std::map<BlockValue, std::map<BlockValue, Rat>> f; // b -> a -> factor
    std::map<BlockValue, std::map<BlockValue, Rat>> g; // b -> c -> factor
};

std::variant<SliceFactors, InconsistentCycle> factorize_slices(const FiniteDistribution& dist,
                                                               const BlockPartition& partition);

} // namespace xci::detail
