#include "xci/enumeration.hpp"

#include "xci/errors.hpp"

#include <string>

namespace xci {

namespace {

std::vector<BlockValue> observed_block_values(const std::set<Point>& support,
                                              const BlockPartition& partition, Block block) {
    std::set<BlockValue> values;
    for (const Point& p : support) values.insert(partition.value(p, block));
    return std::vector<BlockValue>(values.begin(), values.end());
}

void check_cap(const Int& candidates, std::size_t cap, const char* what) {
    if (cap == kUnlimitedEnumeration) return;
    if (candidates > Int(cap)) {
        throw EnumerationTooLarge(std::string(what) + " enumeration has " + candidates.str() +
                                  " candidates, cap is " + std::to_string(cap));
    }
}

} // namespace

std::vector<Slab> enumerate_slabs(const std::set<Point>& support, const BlockPartition& partition,
                                  const Region& region, std::size_t cap) {
    const auto as = observed_block_values(support, partition, Block::A);
    const auto bs = observed_block_values(support, partition, Block::B);
    const auto cs = observed_block_values(support, partition, Block::C);

    const Int na(as.size()), nb(bs.size()), nc(cs.size());
    check_cap(na * (na - 1) / 2 * nb * (nc * (nc - 1) / 2), cap, "slab");

    std::vector<Slab> slabs;
    for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = i + 1; j < as.size(); ++j) {
            for (const BlockValue& b : bs) {
                for (std::size_t k = 0; k < cs.size(); ++k) {
                    for (std::size_t l = k + 1; l < cs.size(); ++l) {
                        const bool inside =
                            region_contains(region, partition.assemble(as[i], b, cs[k])) &&
                            region_contains(region, partition.assemble(as[i], b, cs[l])) &&
                            region_contains(region, partition.assemble(as[j], b, cs[k])) &&
                            region_contains(region, partition.assemble(as[j], b, cs[l]));
                        if (inside) {
                            slabs.push_back(Slab{as[i], as[j], b, cs[k], cs[l]});
                        }
                    }
                }
            }
        }
    }
    return slabs;
}

namespace {

std::vector<BlockValue> subset_for_mask(const std::vector<BlockValue>& values, std::uint64_t mask) {
    std::vector<BlockValue> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (mask & (std::uint64_t(1) << i)) out.push_back(values[i]);
    }
    return out;
}

} // namespace

std::vector<Rectangle> enumerate_rectangles(const std::set<Point>& support,
                                            const BlockPartition& partition, const Region& region,
                                            std::size_t cap) {
    const auto as = observed_block_values(support, partition, Block::A);
    const auto bs = observed_block_values(support, partition, Block::B);
    const auto cs = observed_block_values(support, partition, Block::C);

    if (as.size() >= 63 || bs.size() >= 63 || cs.size() >= 63) {
        throw EnumerationTooLarge("rectangle enumeration over more than 62 block values");
    }
    const auto subsets = [](std::size_t n) { return (Int(1) << n) - 1; };
    check_cap(subsets(as.size()) * subsets(bs.size()) * subsets(cs.size()), cap, "rectangle");

    std::vector<Rectangle> rectangles;
    const std::uint64_t ma_end = std::uint64_t(1) << as.size();
    const std::uint64_t mb_end = std::uint64_t(1) << bs.size();
    const std::uint64_t mc_end = std::uint64_t(1) << cs.size();
    for (std::uint64_t ma = 1; ma < ma_end; ++ma) {
        const auto sa = subset_for_mask(as, ma);
        for (std::uint64_t mb = 1; mb < mb_end; ++mb) {
            const auto sb = subset_for_mask(bs, mb);
            for (std::uint64_t mc = 1; mc < mc_end; ++mc) {
                const auto sc = subset_for_mask(cs, mc);
                bool inside = true;
                for (const auto& a : sa) {
                    for (const auto& b : sb) {
                        for (const auto& c : sc) {
                            if (!region_contains(region, partition.assemble(a, b, c))) {
                                inside = false;
                                break;
                            }
                        }
                        if (!inside) break;
                    }
                    if (!inside) break;
                }
                if (inside) rectangles.push_back(Rectangle{sa, sb, sc});
            }
        }
    }
    return rectangles;
}

} // namespace xci
