#include "xci/witness.hpp"

#include "outer_factors.hpp"
#include "xci/region.hpp"

#include <utility>

namespace xci {

PreconditionEHFailed::PreconditionEHFailed(CIVerdict v)
    : Error("exceedance independence does not hold on the input"), verdict(std::move(v)) {}

OuterCheckFailed::OuterCheckFailed(CIVerdict v)
    : Error("no product-supported extension exists (inconsistent cycle)"), verdict(std::move(v)) {}

VerificationReport verify_witness(const FiniteDistribution& w, const FiniteDistribution& y,
                                  const BlockPartition& partition) {
    VerificationReport r;
    r.dimension_ok = w.dimension() == y.dimension() && partition.dimension() == w.dimension();
    if (!r.dimension_ok) return r;

    const auto la = observed_values(w, partition, Block::A);
    const auto lb = observed_values(w, partition, Block::B);
    const auto lc = observed_values(w, partition, Block::C);
    r.product_support = w.support_size() == la.size() * lb.size() * lc.size();
    if (r.product_support) {
        for (const auto& [point, mass] : y.atoms()) {
            if (!w.contains(point)) {
                r.product_support = false;
                break;
            }
        }
    }

    Rat on_support = 0;
    for (const auto& [point, mass] : y.atoms()) on_support += w.mass(point);
    r.conditional_match = on_support > 0 && condition(w, support(y)) == y;

    r.plain_ci = check_plain_ci(w, partition).holds;
    return r;
}

namespace {

std::string report_failure_text(const VerificationReport& r) {
    std::string out = "witness verification failed:";
    if (!r.dimension_ok) out += " dimension";
    if (!r.product_support) out += " product-support";
    if (!r.conditional_match) out += " conditional-match";
    if (!r.plain_ci) out += " plain-ci";
    return out;
}

// Corner aggregates of the low-B slices, used by the prop1 construction.
struct CornerAggregates {
    std::map<BlockValue, Rat> u; // b -> P(A in L1, B=b, C in L2)
    std::map<BlockValue, Rat> v; // b -> P(A in L2, B=b, C in L1)
    std::map<BlockValue, Rat> w; // b -> P(A in L2, B=b, C in L2)
    std::map<std::pair<BlockValue, BlockValue>, Rat> row; // (a,b) -> P(a, b, C in L2)
    std::map<std::pair<BlockValue, BlockValue>, Rat> col; // (b,c) -> P(A in L2, b, c)
    std::set<BlockValue> low_a, low_b, low_c;             // observed low block values
};

CornerAggregates corner_aggregates(const FiniteDistribution& y, const BlockPartition& partition,
                                   const Rat& threshold) {
    CornerAggregates agg;
    for (const auto& [point, mass] : y.atoms()) {
        const BlockTriple t = partition.split(point);
        const bool a_low = classify_block(t.a, threshold) == BlockClass::L1;
        const bool b_low = classify_block(t.b, threshold) == BlockClass::L1;
        const bool c_low = classify_block(t.c, threshold) == BlockClass::L1;
        if (a_low) agg.low_a.insert(t.a);
        if (b_low) agg.low_b.insert(t.b);
        if (c_low) agg.low_c.insert(t.c);
        if (!b_low) continue;
        if (a_low && !c_low) {
            agg.u[t.b] += mass;
            agg.row[{t.a, t.b}] += mass;
        } else if (!a_low && c_low) {
            agg.v[t.b] += mass;
            agg.col[{t.b, t.c}] += mass;
        } else if (!a_low && !c_low) {
            agg.w[t.b] += mass;
        }
    }
    return agg;
}

Rat get(const std::map<BlockValue, Rat>& m, const BlockValue& k) {
    auto it = m.find(k);
    return it == m.end() ? Rat(0) : it->second;
}

Rat get(const std::map<std::pair<BlockValue, BlockValue>, Rat>& m,
        const std::pair<BlockValue, BlockValue>& k) {
    auto it = m.find(k);
    return it == m.end() ? Rat(0) : it->second;
}

} // namespace

Rat prop1_lambda_closed_form(const FiniteDistribution& y, const BlockPartition& partition,
                             const Rat& threshold) {
    const CornerAggregates agg = corner_aggregates(y, partition, threshold);
    Rat u_total = 0, v_total = 0, w_total = 0;
    for (const auto& [b, m] : agg.u) u_total += m;
    for (const auto& [b, m] : agg.v) v_total += m;
    for (const auto& [b, m] : agg.w) w_total += m;
    if (u_total == 0 || v_total == 0) return 1;
    if (w_total == 0) {
        throw CornerMassZero("closed form needs P(A in L2, B in L1, C in L2) > 0");
    }
    return Rat(1) / (1 + u_total * v_total / w_total);
}

Witness build_prop1_witness(const FiniteDistribution& y, const BlockPartition& partition,
                            const Rat& threshold) {
    const Region region{EHRegion(threshold)};
    for (const auto& [point, mass] : y.atoms()) {
        if (!region_contains(region, point)) {
            throw SupportOutsideRegion("atom " + point_str(point) +
                                       " lies outside the exceedance region");
        }
    }
    CIVerdict eh = check_eh_ci(y, partition, threshold);
    if (!eh.holds) {
        throw PreconditionEHFailed(std::move(eh));
    }

    const CornerAggregates agg = corner_aggregates(y, partition, threshold);

    Rat corner_sum = 0;
    for (const BlockValue& b : agg.low_b) {
        const Rat ub = get(agg.u, b), vb = get(agg.v, b);
        if (ub == 0 || vb == 0) continue;
        const Rat wb = get(agg.w, b);
        if (wb == 0) {
            throw CornerMassZero("slice B=" + point_str(b) +
                                 " needs P(A in L2, C in L2) > 0 to fill the low corner");
        }
        corner_sum += ub * vb / wb;
    }
    const Rat lambda = Rat(1) / (1 + corner_sum);

    const Rat closed = prop1_lambda_closed_form(y, partition, threshold);
    if (closed != lambda) {
        throw VerificationFailed("lambda mismatch: normalization gives " + rat_str(lambda) +
                                 ", closed form gives " + rat_str(closed));
    }

    FiniteDistribution::AtomMap atoms;
    for (const auto& [point, mass] : y.atoms()) {
        atoms[point] = lambda * mass;
    }
    for (const BlockValue& b : agg.low_b) {
        const Rat wb = get(agg.w, b);
        for (const BlockValue& a : agg.low_a) {
            const Rat n1 = get(agg.row, {a, b});
            if (n1 == 0) continue;
            for (const BlockValue& c : agg.low_c) {
                const Rat n2 = get(agg.col, {b, c});
                if (n2 == 0) continue;
                atoms[partition.assemble(a, b, c)] = lambda * n1 * n2 / wb;
            }
        }
    }
    auto w = FiniteDistribution::from_atoms(y.dimension(), std::move(atoms));

    const VerificationReport report = verify_witness(w, y, partition);
    if (!report.ok()) {
        throw VerificationFailed(report_failure_text(report));
    }
    return Witness{std::move(w), "prop1", lambda, {}, {}, report, true};
}

Witness build_prop2_witness(const FiniteDistribution& y, const BlockPartition& partition,
                            const Rat& threshold) {
    const Region cross{CrossRegion(partition, threshold)};
    for (const auto& [point, mass] : y.atoms()) {
        if (!region_contains(cross, point)) {
            throw SupportNotCross("atom " + point_str(point) + " is not on a single arm");
        }
    }

    constexpr Block kBlocks[3] = {Block::A, Block::B, Block::C};
    std::array<Rat, 3> alpha{};
    std::array<std::map<BlockValue, Rat>, 3> arm_law;
    for (const auto& [point, mass] : y.atoms()) {
        const BlockTriple t = partition.split(point);
        const BlockValue* values[3] = {&t.a, &t.b, &t.c};
        for (int k = 0; k < 3; ++k) {
            if (classify_block(*values[k], threshold) == BlockClass::L2) {
                alpha[k] += mass;
                arm_law[k][*values[k]] += mass;
                break;
            }
        }
    }

    std::array<Rat, 3> p;
    std::array<std::map<BlockValue, Rat>, 3> factor;
    for (int k = 0; k < 3; ++k) {
        p[k] = alpha[k] / (1 + alpha[k]);
        const BlockValue zero(partition.indices(kBlocks[k]).size(), Rat(0));
        if (alpha[k] == 0) {
            factor[k][zero] = 1;
        } else {
            factor[k][zero] = 1 - p[k];
            for (const auto& [value, mass] : arm_law[k]) {
                factor[k][value] = p[k] * mass / alpha[k];
            }
        }
    }

    FiniteDistribution::AtomMap atoms;
    for (const auto& [va, ma] : factor[0]) {
        for (const auto& [vb, mb] : factor[1]) {
            for (const auto& [vc, mc] : factor[2]) {
                atoms[partition.assemble(va, vb, vc)] = ma * mb * mc;
            }
        }
    }
    auto w = FiniteDistribution::from_atoms(y.dimension(), std::move(atoms));

    // The arm masses must reproduce the displayed ratios of products of p's.
    const Rat pa = p[0], pb = p[1], pc = p[2];
    const bool b_empty = partition.indices(Block::B).empty();
    if (b_empty) {
        const Rat d = pa * (1 - pc) + (1 - pa) * pc;
        if (d == 0 || alpha[0] != pa * (1 - pc) / d) {
            throw VerificationFailed("arm mass alpha does not satisfy the two-arm condition");
        }
    } else {
        const Rat ta = pa * (1 - pb) * (1 - pc);
        const Rat tb = (1 - pa) * pb * (1 - pc);
        const Rat tc = (1 - pa) * (1 - pb) * pc;
        const Rat d = ta + tb + tc;
        if (d == 0 || alpha[0] != ta / d || alpha[1] != tb / d) {
            throw VerificationFailed("arm masses do not satisfy the three-arm conditions");
        }
    }

    const VerificationReport report = verify_witness(w, y, partition);
    if (!report.ok()) {
        throw VerificationFailed(report_failure_text(report));
    }

    Witness out{std::move(w), "prop2", std::nullopt, {}, {}, report, true};
    out.p[0] = pa;
    out.p[2] = pc;
    if (!b_empty) out.p[1] = pb;
    out.arm_masses.push_back(alpha[0]);
    if (!b_empty) out.arm_masses.push_back(alpha[1]);
    return out;
}

Witness build_outer_witness_generic(const FiniteDistribution& y, const BlockPartition& partition) {
    auto result = detail::factorize_slices(y, partition);
    if (auto* cycle = std::get_if<InconsistentCycle>(&result)) {
        throw OuterCheckFailed(CIVerdict{"outer", false, std::move(*cycle)});
    }
    const auto& factors = std::get<detail::SliceFactors>(result);

    const auto la = observed_values(y, partition, Block::A);
    const auto lb = observed_values(y, partition, Block::B);
    const auto lc = observed_values(y, partition, Block::C);

    // Values absent from a slice get the free factor 1.
    const auto factor_or_one = [](const std::map<BlockValue, Rat>& m, const BlockValue& k) {
        auto it = m.find(k);
        return it == m.end() ? Rat(1) : it->second;
    };

    FiniteDistribution::AtomMap atoms;
    Rat total = 0;
    for (const BlockValue& b : lb) {
        const auto& f = factors.f.at(b);
        const auto& g = factors.g.at(b);
        Rat fsum = 0, gsum = 0;
        std::vector<Rat> fvals, gvals;
        for (const BlockValue& a : la) {
            fvals.push_back(factor_or_one(f, a));
            fsum += fvals.back();
        }
        for (const BlockValue& c : lc) {
            gvals.push_back(factor_or_one(g, c));
            gsum += gvals.back();
        }
        total += fsum * gsum;
        for (std::size_t i = 0; i < la.size(); ++i) {
            for (std::size_t j = 0; j < lc.size(); ++j) {
                atoms[partition.assemble(la[i], b, lc[j])] = fvals[i] * gvals[j];
            }
        }
    }
    for (auto& [point, mass] : atoms) mass /= total;
    auto w = FiniteDistribution::from_atoms(y.dimension(), std::move(atoms));

    const VerificationReport report = verify_witness(w, y, partition);
    if (!report.ok()) {
        throw VerificationFailed(report_failure_text(report));
    }
    return Witness{std::move(w), "generic", Rat(1) / total, {}, {}, report, true};
}

} // namespace xci
