#pragma once

#include "xci/distribution.hpp"
#include "xci/region.hpp"
#include "xci/verdict.hpp"
#include "xci/witness.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace xci {

// JSON serialization with a stable field order; equal values dump to
// identical bytes. indent < 0 gives compact single-line output.

std::string dump_distribution(const FiniteDistribution& dist, int indent = 2);

// Throws InputFormatError on malformed JSON, non-rational numbers (floats
// are rejected), duplicate atoms, or masses that do not sum to 1. Plain
// JSON integers are accepted wherever a rational string is expected.
FiniteDistribution parse_distribution(const std::string& text);

std::string dump_region(const Region& region, int indent = 2);

// Cross regions are stored as {"type":"cross","threshold":...}; the block
// structure comes from the caller's partition.
Region parse_region(const std::string& text, const BlockPartition& partition);

std::string dump_verdict(const CIVerdict& verdict, int indent = 2);

std::string dump_witness(const Witness& witness, int indent = 2);

// FNV-1a over the compact dump, as a hex string; fingerprints inputs in
// reports.
std::uint64_t fnv1a64(std::string_view bytes);
std::string distribution_digest(const FiniteDistribution& dist);

} // namespace xci
