#pragma once

#include "xci/distribution.hpp"
#include "xci/enumeration.hpp"
#include "xci/region.hpp"
#include "xci/verdict.hpp"

namespace xci {

// Exact conditional independence of the A and C blocks given B:
// P(a,b,c)*P_B(b) = P_AB(a,b)*P_BC(b,c) for every triple. Certificate on
// failure: the first violating support atom in canonical order.
CIVerdict check_plain_ci(const FiniteDistribution& dist, const BlockPartition& partition);

// Exceedance independence: plain CI must hold after conditioning on each
// single-coordinate exceedance {Y_k > threshold} with positive probability.
CIVerdict check_eh_ci(const FiniteDistribution& dist, const BlockPartition& partition,
                      const Rat& threshold);

// Inner independence via the slab reduction: every in-region 2x2x1 slab has a
// vanishing minor (absent atoms count as mass 0). Certificate: first
// violating slab in enumeration order.
CIVerdict check_inner_ci(const FiniteDistribution& dist, const BlockPartition& partition,
                         const Region& region, std::size_t slab_cap = kUnlimitedEnumeration);

// Definition-level oracle for the slab reduction: plain CI must hold after
// conditioning on every positive-mass in-region rectangle.
CIVerdict check_inner_ci_bruteforce(const FiniteDistribution& dist,
                                    const BlockPartition& partition, const Region& region,
                                    std::size_t rect_cap = kDefaultRectangleCap);

// Outer independence: per observed B-value, the support pattern admits an
// exact positive rank-1 completion, decided by spanning-forest propagation
// plus consistency of every non-tree edge. Certificate on failure: the first
// inconsistent cycle; on success: a WitnessRef for the generic builder.
CIVerdict check_outer_ci(const FiniteDistribution& dist, const BlockPartition& partition);

// Re-derives a failure certificate from scratch: returns true iff the
// verdict carries a certificate that genuinely violates its notion on dist.
// Slabs and rectangles are validated against EHRegion(threshold).
bool reevaluate_certificate(const FiniteDistribution& dist, const BlockPartition& partition,
                            const Rat& threshold, const CIVerdict& verdict);

} // namespace xci
