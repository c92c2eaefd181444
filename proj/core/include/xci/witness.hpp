#pragma once

#include "xci/checks.hpp"
#include "xci/distribution.hpp"
#include "xci/errors.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace xci {

struct VerificationReport {
    bool dimension_ok = false;
    bool product_support = false;
    bool conditional_match = false;
    bool plain_ci = false;

    bool ok() const { return dimension_ok && product_support && conditional_match && plain_ci; }
};

// A candidate W certifying outer independence, with construction metadata.
struct Witness {
    FiniteDistribution w;
    std::string method;                   // prop1 | prop2 | generic
    std::optional<Rat> lambda;            // prop1, generic: P(W in supp Y)
    std::array<std::optional<Rat>, 3> p;  // prop2 mixture parameters, indexed by block
    std::vector<Rat> arm_masses;          // prop2: {alpha} (B empty) or {alpha1, alpha2}
    VerificationReport report;
    bool verified = false;
};

// Exceedance independence did not hold on the input; carries the verdict.
struct PreconditionEHFailed : Error {
    CIVerdict verdict;
    explicit PreconditionEHFailed(CIVerdict v);
};

// Outer feasibility failed; carries the inconsistent-cycle verdict.
struct OuterCheckFailed : Error {
    CIVerdict verdict;
    explicit OuterCheckFailed(CIVerdict v);
};

// Extends Y (supported inside EHRegion(threshold), exceedance-independent) to
// a product-supported W by scaling Y's cells with lambda and filling the
// all-low corner per B-slice with the ratio formula. lambda is computed both
// by normalization and by the pooled closed form; they must agree exactly.
Witness build_prop1_witness(const FiniteDistribution& y, const BlockPartition& partition,
                            const Rat& threshold);

// For cross-supported Y: builds W as an independent product of per-block
// two-point mixtures (mass 1-p_k at the zero value, p_k on Y's conditional
// arm law), with p_k = alpha_k/(1+alpha_k). Verifies the arm-mass conditions
// relating alpha to the p parameters exactly.
Witness build_prop2_witness(const FiniteDistribution& y, const BlockPartition& partition,
                            const Rat& threshold);

// Completion-based builder: per-B-slice spanning-forest factors, free cells
// set to 1, globally renormalized.
Witness build_outer_witness_generic(const FiniteDistribution& y, const BlockPartition& partition);

// Exact verification: supp(w) is a full product of its observed block values
// and contains supp(y); conditioning w on supp(y) reproduces y; w satisfies
// plain CI.
VerificationReport verify_witness(const FiniteDistribution& w, const FiniteDistribution& y,
                                  const BlockPartition& partition);

// Pooled closed form 1/(1 + P(L1,L1,L2) * P(L2,L1,L1) / P(L2,L1,L2)) with the
// aggregates taken over the low B-values.
Rat prop1_lambda_closed_form(const FiniteDistribution& y, const BlockPartition& partition,
                             const Rat& threshold);

} // namespace xci
