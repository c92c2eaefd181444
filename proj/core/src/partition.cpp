#include "xci/partition.hpp"

#include "xci/errors.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace xci {

BlockPartition::BlockPartition(std::size_t dimension,
                               std::vector<std::size_t> a,
                               std::vector<std::size_t> b,
                               std::vector<std::size_t> c)
    : dimension_(dimension), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    std::sort(a_.begin(), a_.end());
    std::sort(b_.begin(), b_.end());
    std::sort(c_.begin(), c_.end());

    if (a_.empty() || c_.empty()) {
        throw InvalidPartition("blocks A and C must be nonempty");
    }

    std::vector<bool> seen(dimension_, false);
    std::size_t covered = 0;
    for (const auto* block : {&a_, &b_, &c_}) {
        for (std::size_t idx : *block) {
            if (idx >= dimension_) {
                throw InvalidPartition("coordinate index " + std::to_string(idx) +
                                       " out of range for dimension " + std::to_string(dimension_));
            }
            if (seen[idx]) {
                throw InvalidPartition("coordinate index " + std::to_string(idx) +
                                       " assigned to more than one block");
            }
            seen[idx] = true;
            ++covered;
        }
    }
    if (covered != dimension_) {
        throw InvalidPartition("blocks do not cover every coordinate");
    }
}

const std::vector<std::size_t>& BlockPartition::indices(Block block) const {
    switch (block) {
        case Block::A: return a_;
        case Block::B: return b_;
        case Block::C: return c_;
    }
    throw InvalidPartition("unknown block");
}

BlockValue BlockPartition::value(const Point& p, Block block) const {
    if (p.size() != dimension_) {
        throw InvalidIndices("point dimension does not match partition");
    }
    const auto& idx = indices(block);
    BlockValue out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(p[i]);
    return out;
}

BlockTriple BlockPartition::split(const Point& p) const {
    return BlockTriple{value(p, Block::A), value(p, Block::B), value(p, Block::C)};
}

Point BlockPartition::assemble(const BlockValue& a, const BlockValue& b, const BlockValue& c) const {
    if (a.size() != a_.size() || b.size() != b_.size() || c.size() != c_.size()) {
        throw InvalidIndices("block value size does not match partition");
    }
    Point p(dimension_);
    for (std::size_t k = 0; k < a_.size(); ++k) p[a_[k]] = a[k];
    for (std::size_t k = 0; k < b_.size(); ++k) p[b_[k]] = b[k];
    for (std::size_t k = 0; k < c_.size(); ++k) p[c_[k]] = c[k];
    return p;
}

namespace {

std::vector<std::size_t> parse_index_list(std::string_view text, std::string_view block_name) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view item = text.substr(pos, comma - pos);
        if (item.empty()) {
            throw InvalidPartition("empty index in block " + std::string(block_name));
        }
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc{} || ptr != item.data() + item.size() || value == 0) {
            throw InvalidPartition("invalid 1-based index '" + std::string(item) +
                                   "' in block " + std::string(block_name));
        }
        out.push_back(value - 1);
        pos = comma + 1;
    }
    return out;
}

} // namespace

BlockPartition parse_partition_spec(std::string_view text, std::size_t dimension) {
    std::vector<std::size_t> blocks[3];
    bool have[3] = {false, false, false};

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        if (semi == std::string_view::npos) semi = text.size();
        std::string_view part = text.substr(pos, semi - pos);
        if (part.size() < 2 || part[1] != '=') {
            throw InvalidPartition("expected 'A=...;B=...;C=...', got '" + std::string(text) + "'");
        }
        int slot = -1;
        switch (part[0]) {
            case 'A': slot = 0; break;
            case 'B': slot = 1; break;
            case 'C': slot = 2; break;
            default:
                throw InvalidPartition(std::string("unknown block '") + part[0] + "'");
        }
        if (have[slot]) {
            throw InvalidPartition(std::string("block '") + part[0] + "' given twice");
        }
        have[slot] = true;
        blocks[slot] = parse_index_list(part.substr(2), part.substr(0, 1));
        if (semi == text.size()) break;
        pos = semi + 1;
    }

    if (!have[0] || !have[1] || !have[2]) {
        throw InvalidPartition("partition must name all of A, B, C");
    }
    return BlockPartition(dimension, std::move(blocks[0]), std::move(blocks[1]), std::move(blocks[2]));
}

} // namespace xci
