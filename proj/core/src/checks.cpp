#include "xci/checks.hpp"

#include "outer_factors.hpp"
#include "xci/errors.hpp"

#include <algorithm>
#include <deque>
#include <utility>
#include <vector>

namespace xci {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

struct BlockMarginals {
    std::map<BlockValue, Rat> pb;
    std::map<std::pair<BlockValue, BlockValue>, Rat> pab;
    std::map<std::pair<BlockValue, BlockValue>, Rat> pbc;
};

BlockMarginals block_marginals(const FiniteDistribution& dist, const BlockPartition& partition) {
    BlockMarginals m;
    for (const auto& [point, mass] : dist.atoms()) {
        const BlockTriple t = partition.split(point);
        m.pb[t.b] += mass;
        m.pab[{t.a, t.b}] += mass;
        m.pbc[{t.b, t.c}] += mass;
    }
    return m;
}

Rat lookup(const std::map<std::pair<BlockValue, BlockValue>, Rat>& m,
           const std::pair<BlockValue, BlockValue>& key) {
    auto it = m.find(key);
    return it == m.end() ? Rat(0) : it->second;
}

// The factorization identity holds on every triple iff it holds on every
// support atom: summing the atom identities over a row (a,b,*) forces the
// row to cover every C-value observed in the b-slice, so no off-atom triple
// can have positive P_AB * P_BC.
bool plain_ci_violation(const FiniteDistribution& dist, const BlockPartition& partition,
                        BlockTriple& out) {
    const BlockMarginals m = block_marginals(dist, partition);
    for (const auto& [point, mass] : dist.atoms()) {
        const BlockTriple t = partition.split(point);
        if (mass * m.pb.at(t.b) != lookup(m.pab, {t.a, t.b}) * lookup(m.pbc, {t.b, t.c})) {
            out = t;
            return true;
        }
    }
    return false;
}

void require_support_in_region(const FiniteDistribution& dist, const Region& region) {
    for (const auto& [point, mass] : dist.atoms()) {
        if (!region_contains(region, point)) {
            throw SupportOutsideRegion("support atom " + point_str(point) +
                                       " lies outside the region");
        }
    }
}

} // namespace

CIVerdict check_plain_ci(const FiniteDistribution& dist, const BlockPartition& partition) {
    BlockTriple t;
    if (plain_ci_violation(dist, partition, t)) {
        return CIVerdict{"plain", false, ViolatingTriple{t.a, t.b, t.c, {}, {}}};
    }
    return CIVerdict{"plain", true, {}};
}

CIVerdict check_eh_ci(const FiniteDistribution& dist, const BlockPartition& partition,
                      const Rat& threshold) {
    for (std::size_t k = 0; k < dist.dimension(); ++k) {
        const bool exceeds = std::any_of(dist.atoms().begin(), dist.atoms().end(),
                                         [&](const auto& atom) { return atom.first[k] > threshold; });
        if (!exceeds) continue;
        const FiniteDistribution cond = condition_exceedance(dist, k, threshold);
        BlockTriple t;
        if (plain_ci_violation(cond, partition, t)) {
            return CIVerdict{"eh", false, ViolatingTriple{t.a, t.b, t.c, k, {}}};
        }
    }
    return CIVerdict{"eh", true, {}};
}

CIVerdict check_inner_ci(const FiniteDistribution& dist, const BlockPartition& partition,
                         const Region& region, std::size_t slab_cap) {
    require_support_in_region(dist, region);
    for (const Slab& s : enumerate_slabs(support(dist), partition, region, slab_cap)) {
        const Rat m11 = dist.mass(partition.assemble(s.a, s.b, s.c));
        const Rat m12 = dist.mass(partition.assemble(s.a, s.b, s.c_prime));
        const Rat m21 = dist.mass(partition.assemble(s.a_prime, s.b, s.c));
        const Rat m22 = dist.mass(partition.assemble(s.a_prime, s.b, s.c_prime));
        if (m11 * m22 != m12 * m21) {
            return CIVerdict{"inner", false, ViolatingSlab{s}};
        }
    }
    return CIVerdict{"inner", true, {}};
}

CIVerdict check_inner_ci_bruteforce(const FiniteDistribution& dist,
                                    const BlockPartition& partition, const Region& region,
                                    std::size_t rect_cap) {
    require_support_in_region(dist, region);
    for (const Rectangle& r : enumerate_rectangles(support(dist), partition, region, rect_cap)) {
        const auto member = [](const std::vector<BlockValue>& values, const BlockValue& v) {
            return std::binary_search(values.begin(), values.end(), v);
        };
        const auto event = [&](const Point& p) {
            const BlockTriple t = partition.split(p);
            return member(r.a_values, t.a) && member(r.b_values, t.b) && member(r.c_values, t.c);
        };
        Rat total = 0;
        for (const auto& [point, mass] : dist.atoms()) {
            if (event(point)) total += mass;
        }
        if (total == 0) continue;
        BlockTriple t;
        if (plain_ci_violation(condition(dist, event), partition, t)) {
            return CIVerdict{"inner-bf", false, ViolatingTriple{t.a, t.b, t.c, {}, r}};
        }
    }
    return CIVerdict{"inner-bf", true, {}};
}

namespace detail {

namespace {

struct SliceGraph {
    std::vector<BlockValue> avals, cvals;        // sorted
    std::map<std::pair<BlockValue, BlockValue>, Rat> edges;

    std::size_t a_id(const BlockValue& a) const {
        return std::lower_bound(avals.begin(), avals.end(), a) - avals.begin();
    }
    std::size_t c_id(const BlockValue& c) const {
        return avals.size() + (std::lower_bound(cvals.begin(), cvals.end(), c) - cvals.begin());
    }
};

struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        parent[y] = x;
        return true;
    }
};

// Tree path between u and v as a list of (a,c) cells, oriented from u to v.
std::vector<CycleCell> tree_path(const SliceGraph& g,
                                 const std::vector<std::vector<std::size_t>>& adj,
                                 std::size_t from, std::size_t to) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> parent(n, n);
    std::deque<std::size_t> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        if (u == to) break;
        for (std::size_t v : adj[u]) {
            if (parent[v] == n) {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }

    std::vector<std::size_t> vertices;
    for (std::size_t v = to; v != from; v = parent[v]) vertices.push_back(v);
    vertices.push_back(from);
    std::reverse(vertices.begin(), vertices.end());

    std::vector<CycleCell> cells;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const std::size_t u = vertices[i], v = vertices[i + 1];
        const std::size_t a = std::min(u, v), c = std::max(u, v);
        cells.push_back(CycleCell{g.avals[a], g.cvals[c - g.avals.size()]});
    }
    return cells;
}

} // namespace

std::variant<SliceFactors, InconsistentCycle> factorize_slices(const FiniteDistribution& dist,
                                                               const BlockPartition& partition) {
    std::map<BlockValue, SliceGraph> slices;
    for (const auto& [point, mass] : dist.atoms()) {
        const BlockTriple t = partition.split(point);
        slices[t.b].edges[{t.a, t.c}] = mass;
    }

    SliceFactors factors;
    for (auto& [b, g] : slices) {
        {
            std::set<BlockValue> aset, cset;
            for (const auto& [edge, mass] : g.edges) {
                aset.insert(edge.first);
                cset.insert(edge.second);
            }
            g.avals.assign(aset.begin(), aset.end());
            g.cvals.assign(cset.begin(), cset.end());
        }
        const std::size_t n = g.avals.size() + g.cvals.size();

        Dsu dsu(n);
        std::vector<std::vector<std::size_t>> adj(n);
        std::vector<std::pair<std::pair<BlockValue, BlockValue>, Rat>> non_tree;
        for (const auto& [edge, mass] : g.edges) {
            const std::size_t u = g.a_id(edge.first), v = g.c_id(edge.second);
            if (dsu.unite(u, v)) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            } else {
                non_tree.emplace_back(edge, mass);
            }
        }

        // Propagate factors along the forest, rooting each component at its
        // smallest A-value with factor 1.
        std::map<BlockValue, Rat>& f = factors.f[b];
        std::map<BlockValue, Rat>& g_out = factors.g[b];
        std::vector<Rat> value(n);
        std::vector<bool> assigned(n, false);
        for (std::size_t root = 0; root < g.avals.size(); ++root) {
            if (assigned[root]) continue;
            value[root] = 1;
            assigned[root] = true;
            std::deque<std::size_t> queue{root};
            while (!queue.empty()) {
                const std::size_t u = queue.front();
                queue.pop_front();
                for (std::size_t v : adj[u]) {
                    if (assigned[v]) continue;
                    const std::size_t a = std::min(u, v), c = std::max(u, v);
                    const Rat& mass = g.edges.at({g.avals[a], g.cvals[c - g.avals.size()]});
                    value[v] = mass / value[u];
                    assigned[v] = true;
                    queue.push_back(v);
                }
            }
        }
        for (std::size_t i = 0; i < g.avals.size(); ++i) f[g.avals[i]] = value[i];
        for (std::size_t i = 0; i < g.cvals.size(); ++i) g_out[g.cvals[i]] = value[g.avals.size() + i];

        for (const auto& [edge, mass] : non_tree) {
            if (f.at(edge.first) * g_out.at(edge.second) == mass) continue;
            std::vector<CycleCell> cells{CycleCell{edge.first, edge.second}};
            const auto path = tree_path(g, adj, g.a_id(edge.first), g.c_id(edge.second));
            cells.insert(cells.end(), path.begin(), path.end());
            return InconsistentCycle{b, std::move(cells)};
        }
    }
    return factors;
}

} // namespace detail

CIVerdict check_outer_ci(const FiniteDistribution& dist, const BlockPartition& partition) {
    auto result = detail::factorize_slices(dist, partition);
    if (auto* cycle = std::get_if<InconsistentCycle>(&result)) {
        return CIVerdict{"outer", false, std::move(*cycle)};
    }
    return CIVerdict{"outer", true, WitnessRef{"generic"}};
}

namespace {

bool triple_violation_holds(const FiniteDistribution& table, const BlockPartition& partition,
                            const ViolatingTriple& t) {
    const BlockMarginals m = block_marginals(table, partition);
    const auto pb_it = m.pb.find(t.b);
    const Rat pb = pb_it == m.pb.end() ? Rat(0) : pb_it->second;
    const Rat mass = table.mass(partition.assemble(t.a, t.b, t.c));
    return mass * pb != lookup(m.pab, {t.a, t.b}) * lookup(m.pbc, {t.b, t.c});
}

} // namespace

bool reevaluate_certificate(const FiniteDistribution& dist, const BlockPartition& partition,
                            const Rat& threshold, const CIVerdict& verdict) {
    if (verdict.holds) return false;
    const Region region{EHRegion(threshold)};

    return std::visit(
        overloaded{
            [](const std::monostate&) { return false; },
            [](const WitnessRef&) { return false; },
            [&](const ViolatingTriple& t) {
                FiniteDistribution table = dist;
                if (t.exceed_coord) {
                    const std::size_t k = *t.exceed_coord;
                    if (k >= dist.dimension()) return false;
                    const bool exceeds =
                        std::any_of(dist.atoms().begin(), dist.atoms().end(),
                                    [&](const auto& atom) { return atom.first[k] > threshold; });
                    if (!exceeds) return false;
                    table = condition_exceedance(table, k, threshold);
                }
                if (t.rectangle) {
                    const Rectangle& r = *t.rectangle;
                    for (const auto& a : r.a_values) {
                        for (const auto& b : r.b_values) {
                            for (const auto& c : r.c_values) {
                                if (!region_contains(region, partition.assemble(a, b, c))) {
                                    return false;
                                }
                            }
                        }
                    }
                    const auto member = [](const std::vector<BlockValue>& values,
                                           const BlockValue& v) {
                        return std::find(values.begin(), values.end(), v) != values.end();
                    };
                    const auto event = [&](const Point& p) {
                        const BlockTriple bt = partition.split(p);
                        return member(r.a_values, bt.a) && member(r.b_values, bt.b) &&
                               member(r.c_values, bt.c);
                    };
                    Rat total = 0;
                    for (const auto& [point, mass] : table.atoms()) {
                        if (event(point)) total += mass;
                    }
                    if (total == 0) return false;
                    table = condition(table, event);
                }
                return triple_violation_holds(table, partition, t);
            },
            [&](const ViolatingSlab& vs) {
                const Slab& s = vs.slab;
                for (const Point& p :
                     {partition.assemble(s.a, s.b, s.c), partition.assemble(s.a, s.b, s.c_prime),
                      partition.assemble(s.a_prime, s.b, s.c),
                      partition.assemble(s.a_prime, s.b, s.c_prime)}) {
                    if (!region_contains(region, p)) return false;
                }
                const Rat m11 = dist.mass(partition.assemble(s.a, s.b, s.c));
                const Rat m12 = dist.mass(partition.assemble(s.a, s.b, s.c_prime));
                const Rat m21 = dist.mass(partition.assemble(s.a_prime, s.b, s.c));
                const Rat m22 = dist.mass(partition.assemble(s.a_prime, s.b, s.c_prime));
                return m11 * m22 != m12 * m21;
            },
            [&](const InconsistentCycle& cyc) {
                const std::size_t n = cyc.cells.size();
                if (n == 0 || n % 2 != 0) return false;
                Rat even = 1, odd = 1;
                for (std::size_t i = 0; i < n; ++i) {
                    const CycleCell& cur = cyc.cells[i];
                    const CycleCell& next = cyc.cells[(i + 1) % n];
                    if (i % 2 == 0 ? cur.a != next.a : cur.c != next.c) return false;
                    const Rat mass = dist.mass(partition.assemble(cur.a, cyc.b, cur.c));
                    if (mass == 0) return false;
                    (i % 2 == 0 ? even : odd) *= mass;
                }
                return even != odd;
            },
        },
        verdict.certificate);
}

} // namespace xci
