#pragma once

#include "xci/distribution.hpp"
#include "xci/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xci {

// Equivalence suites: the "eh" shape exercises the three-notion agreement on
// exceedance grids (one product-law instance and one slab-perturbed instance
// per trial), the "cross" shape exercises cross-supported laws. Each trial is
// a pure function of (seed, trial index, options), so trials could run in any
// order or in parallel; they run in index order here.
struct SuiteOptions {
    std::string shape = "eh"; // "eh" or "cross"
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t dimension = 0; // 0 picks the default: 2 for eh, alternating 2/3 for cross
    Rat threshold = 1;
};

struct SuiteFailure {
    std::size_t trial = 0;
    std::string stage;  // "agreement", "certificate", "prop1-witness", ...
    std::string detail;
    std::optional<FiniteDistribution> instance;
};

struct SuiteOutcome {
    std::size_t instances = 0;
    std::size_t agreements = 0;
    std::vector<SuiteFailure> failures;

    bool ok() const { return failures.empty(); }
};

// Throws InvalidIndices for trials == 0 and InputFormatError for an unknown
// shape or nonpositive threshold; everything that goes wrong inside a trial
// is recorded as a failure instead of thrown.
SuiteOutcome run_suite(const SuiteOptions& options);

} // namespace xci
