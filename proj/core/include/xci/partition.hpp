#pragma once

#include "xci/point.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace xci {

enum class Block { A, B, C };

// Value of a point on each block, in block order (A, B, C). Ordered
// lexicographically so it can key canonical maps.
struct BlockTriple {
    BlockValue a;
    BlockValue b;
    BlockValue c;

    friend bool operator==(const BlockTriple& x, const BlockTriple& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator<(const BlockTriple& x, const BlockTriple& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }
};

// Splits coordinates {0, ..., dimension-1} into three disjoint blocks.
// A and C must be nonempty; B may be empty. Indices are stored sorted.
class BlockPartition {
public:
    BlockPartition(std::size_t dimension,
                   std::vector<std::size_t> a,
                   std::vector<std::size_t> b,
                   std::vector<std::size_t> c);

    std::size_t dimension() const { return dimension_; }
    const std::vector<std::size_t>& indices(Block block) const;

    // Restriction of a point to one block.
    BlockValue value(const Point& p, Block block) const;
    BlockTriple split(const Point& p) const;

    // Inverse of split: rebuilds the full point from per-block values.
    Point assemble(const BlockValue& a, const BlockValue& b, const BlockValue& c) const;
    Point assemble(const BlockTriple& t) const { return assemble(t.a, t.b, t.c); }

    friend bool operator==(const BlockPartition& x, const BlockPartition& y) {
        return x.dimension_ == y.dimension_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
    }

private:
    std::size_t dimension_;
    std::vector<std::size_t> a_;
    std::vector<std::size_t> b_;
    std::vector<std::size_t> c_;
};

// Parses "A=1,2;B=;C=3" with 1-based coordinate indices. The three blocks
// may appear in any order but each must appear exactly once.
BlockPartition parse_partition_spec(std::string_view text, std::size_t dimension);

} // namespace xci
