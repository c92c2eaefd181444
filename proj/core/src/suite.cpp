#include "xci/suite.hpp"

#include "xci/checks.hpp"
#include "xci/errors.hpp"
#include "xci/generators.hpp"
#include "xci/witness.hpp"

#include <array>
#include <utility>

namespace xci {

namespace {

constexpr std::uint64_t kTrialStride = 0x9E3779B97F4A7C15ULL;

BlockPartition suite_partition(std::size_t dimension) {
    if (dimension == 2) return BlockPartition(2, {0}, {}, {1});
    if (dimension == 3) return BlockPartition(3, {0}, {1}, {2});
    throw InvalidIndices("suite dimension must be 2 or 3");
}

struct TrialContext {
    std::size_t trial;
    SuiteOutcome* out;

    void fail(std::string stage, std::string detail,
              std::optional<FiniteDistribution> instance = std::nullopt) {
        out->failures.push_back(
            SuiteFailure{trial, std::move(stage), std::move(detail), std::move(instance)});
    }
};

// Shared duties for one exceedance-shape instance: notion agreement, the
// expected verdict, genuineness of every failing certificate, and the
// outer-check/generic-witness correspondence.
void evaluate_eh_instance(TrialContext& ctx, const FiniteDistribution& y,
                          const BlockPartition& partition, const Rat& threshold,
                          const Region& region, bool expected) {
    ctx.out->instances += 1;

    const CIVerdict eh = check_eh_ci(y, partition, threshold);
    const CIVerdict inner = check_inner_ci(y, partition, region);
    const CIVerdict inner_bf = check_inner_ci_bruteforce(y, partition, region);
    const CIVerdict outer = check_outer_ci(y, partition);

    const bool agree = eh.holds == inner.holds && eh.holds == inner_bf.holds &&
                       eh.holds == outer.holds;
    if (agree) {
        ctx.out->agreements += 1;
    } else {
        ctx.fail("agreement",
                 "eh=" + std::to_string(eh.holds) + " inner=" + std::to_string(inner.holds) +
                     " inner-bf=" + std::to_string(inner_bf.holds) +
                     " outer=" + std::to_string(outer.holds),
                 y);
    }
    if (eh.holds != expected) {
        ctx.fail("expected-verdict",
                 std::string("expected ") + (expected ? "true" : "false") + " instance", y);
    }

    for (const CIVerdict* v : {&eh, &inner, &inner_bf, &outer}) {
        if (!v->holds && !reevaluate_certificate(y, partition, threshold, *v)) {
            ctx.fail("certificate", v->notion + " certificate does not re-evaluate as genuine",
                     y);
        }
    }

    if (outer.holds) {
        try {
            const Witness w = build_outer_witness_generic(y, partition);
            if (!w.verified) {
                ctx.fail("generic-witness", "witness not verified", y);
            }
        } catch (const Error& e) {
            ctx.fail("generic-witness", e.what(), y);
        }
    } else {
        try {
            build_outer_witness_generic(y, partition);
            ctx.fail("generic-witness", "builder succeeded although the outer check failed", y);
        } catch (const OuterCheckFailed& e) {
            if (!(e.verdict.certificate == outer.certificate)) {
                ctx.fail("generic-witness", "builder cycle differs from the outer certificate",
                         y);
            }
        } catch (const Error& e) {
            ctx.fail("generic-witness", std::string("unexpected error: ") + e.what(), y);
        }
    }
}

// Witness duties on a CI-true instance: the construction verifies, the
// normalization constant matches the closed form, and the witness restores
// the product law the instance was generated from.
void evaluate_prop1_duties(TrialContext& ctx, const ProductLawDraw& draw,
                           const BlockPartition& partition, const Rat& threshold) {
    try {
        const Witness w = build_prop1_witness(draw.restricted, partition, threshold);
        if (!w.verified || !w.lambda) {
            ctx.fail("prop1-witness", "witness not verified", draw.restricted);
            return;
        }
        if (*w.lambda != prop1_lambda_closed_form(draw.restricted, partition, threshold)) {
            ctx.fail("prop1-witness", "normalization disagrees with the closed form",
                     draw.restricted);
        }
        if (!(w.w == draw.law)) {
            ctx.fail("round-trip", "witness does not restore the generating product law",
                     draw.restricted);
        }
    } catch (const Error& e) {
        ctx.fail("prop1-witness", e.what(), draw.restricted);
    }
}

void run_eh_trial(TrialContext& ctx, Rng& rng, const SuiteOptions& opt) {
    const std::size_t d = opt.dimension == 0 ? 2 : opt.dimension;
    const BlockPartition partition = suite_partition(d);
    const Region region{EHRegion(opt.threshold)};
    const std::size_t max_values = d == 2 ? 4 : 3;

    std::vector<CoordinateRange> ranges(d, CoordinateRange{2, max_values, 1});
    const GridSpec grid = random_grid_spec(rng, opt.threshold, ranges);
    const ProductLawDraw draw = draw_product_ci(rng.bits(), grid, partition, region);
    evaluate_eh_instance(ctx, draw.restricted, partition, opt.threshold, region, true);
    evaluate_prop1_duties(ctx, draw, partition, opt.threshold);

    // A slab needs two A-values whose pair stays in the region against any
    // C-pair, so force at least two above-threshold values on coordinate 0.
    std::vector<CoordinateRange> ranges2 = ranges;
    ranges2[0].min_values = 3;
    ranges2[0].min_high = 2;
    const GridSpec grid2 = random_grid_spec(rng, opt.threshold, ranges2);
    const FiniteDistribution base = gen_product_ci(rng.bits(), grid2, partition, region);
    const auto slabs = enumerate_slabs(support(base), partition, region);
    if (slabs.empty()) {
        ctx.fail("harness", "no in-region slab available to perturb", base);
        return;
    }
    const Slab slab = slabs[rng.index(slabs.size())];
    const Rat m12 = base.mass(partition.assemble(slab.a, slab.b, slab.c_prime));
    const Rat m21 = base.mass(partition.assemble(slab.a_prime, slab.b, slab.c));
    const Rat epsilon = (m12 < m21 ? m12 : m21) / static_cast<int>(2 + rng.index(3));
    const FiniteDistribution perturbed = gen_perturbed(base, partition, region, slab, epsilon);
    evaluate_eh_instance(ctx, perturbed, partition, opt.threshold, region, false);
}

void run_cross_trial(TrialContext& ctx, Rng& rng, const SuiteOptions& opt) {
    const std::size_t d =
        opt.dimension != 0 ? opt.dimension : (ctx.trial % 2 == 0 ? 2 : 3);
    const BlockPartition partition = suite_partition(d);
    const bool single_arm = ctx.trial % 8 == 7;

    std::array<std::size_t, 3> arms{0, 0, 0};
    const std::array<std::size_t, 3> hosts = d == 2 ? std::array<std::size_t, 3>{0, 2, 2}
                                                    : std::array<std::size_t, 3>{0, 1, 2};
    const std::size_t host_count = d == 2 ? 2 : 3;
    if (single_arm) {
        arms[hosts[rng.index(host_count)]] = 1 + rng.index(5);
    } else {
        for (std::size_t k = 0; k < host_count; ++k) {
            arms[hosts[k]] = 1 + rng.index(5);
        }
    }

    const FiniteDistribution y = gen_cross(rng.bits(), partition, arms, opt.threshold);
    ctx.out->instances += 1;

    const Region region{EHRegion(opt.threshold)};
    const CIVerdict eh = check_eh_ci(y, partition, opt.threshold);
    const CIVerdict inner = check_inner_ci(y, partition, region);
    const CIVerdict outer = check_outer_ci(y, partition);
    if (eh.holds && inner.holds && outer.holds) {
        ctx.out->agreements += 1;
    } else {
        ctx.fail("agreement",
                 "cross instance not accepted: eh=" + std::to_string(eh.holds) +
                     " inner=" + std::to_string(inner.holds) +
                     " outer=" + std::to_string(outer.holds),
                 y);
        return;
    }

    try {
        const Witness w = build_prop2_witness(y, partition, opt.threshold);
        if (!w.verified) {
            ctx.fail("prop2-witness", "witness not verified", y);
            return;
        }

        // Re-derive the arm-mass conditions from the reported p alone.
        const bool b_empty = partition.indices(Block::B).empty();
        if (!w.p[0] || !w.p[2] || (b_empty ? w.p[1].has_value() : !w.p[1]) ||
            w.arm_masses.size() != (b_empty ? 1u : 2u)) {
            ctx.fail("prop2-witness", "unexpected p/alpha layout", y);
            return;
        }
        const Rat alpha_a = w.arm_masses[0];
        const Rat alpha_b = b_empty ? Rat(0) : w.arm_masses[1];
        const Rat alpha_c = 1 - alpha_a - alpha_b;
        const Rat pa = *w.p[0], pb = b_empty ? Rat(0) : *w.p[1], pc = *w.p[2];
        bool conditions = pa == alpha_a / (1 + alpha_a) && pc == alpha_c / (1 + alpha_c) &&
                          (b_empty || pb == alpha_b / (1 + alpha_b));
        if (conditions) {
            if (b_empty) {
                const Rat den = pa * (1 - pc) + (1 - pa) * pc;
                conditions = den != 0 && alpha_a == pa * (1 - pc) / den;
            } else {
                const Rat ta = pa * (1 - pb) * (1 - pc);
                const Rat tb = (1 - pa) * pb * (1 - pc);
                const Rat tc = (1 - pa) * (1 - pb) * pc;
                const Rat den = ta + tb + tc;
                conditions = den != 0 && alpha_a == ta / den && alpha_b == tb / den;
            }
        }
        if (!conditions) {
            ctx.fail("prop2-witness", "arm-mass conditions do not re-derive from p", y);
        }
    } catch (const Error& e) {
        ctx.fail("prop2-witness", e.what(), y);
    }
}

} // namespace

SuiteOutcome run_suite(const SuiteOptions& options) {
    if (options.trials == 0) {
        throw InvalidIndices("suite needs at least one trial");
    }
    if (options.shape != "eh" && options.shape != "cross") {
        throw InputFormatError("unknown suite shape \"" + options.shape + "\"");
    }
    if (options.threshold <= 0) {
        throw InputFormatError("threshold must be positive");
    }

    SuiteOutcome out;
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        TrialContext ctx{trial, &out};
        Rng rng(options.seed + kTrialStride * (trial + 1));
        try {
            if (options.shape == "eh") {
                run_eh_trial(ctx, rng, options);
            } else {
                run_cross_trial(ctx, rng, options);
            }
        } catch (const Error& e) {
            ctx.fail("harness", e.what());
        }
    }
    return out;
}

} // namespace xci
