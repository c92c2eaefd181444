#include "xci/io.hpp"

#include "xci/errors.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <utility>
#include <variant>

namespace xci {

namespace {

using Json = nlohmann::ordered_json;

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string dump(const Json& j, int indent) {
    return indent < 0 ? j.dump() : j.dump(indent);
}

Rat rat_from_json(const Json& j, const char* what) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_unsigned()) return Rat(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    throw InputFormatError(std::string(what) +
                           " must be a rational string like \"3/4\" (floats are not exact)");
}

Json block_value_to_json(const BlockValue& value) {
    Json out = Json::array();
    for (const Rat& x : value) out.push_back(rat_str(x));
    return out;
}

BlockValue block_value_from_json(const Json& j, const char* what) {
    if (!j.is_array()) {
        throw InputFormatError(std::string(what) + " must be an array of rationals");
    }
    BlockValue out;
    out.reserve(j.size());
    for (const Json& x : j) out.push_back(rat_from_json(x, what));
    return out;
}

Json distribution_to_json(const FiniteDistribution& dist) {
    Json out;
    out["dimension"] = dist.dimension();
    Json atoms = Json::array();
    for (const auto& [point, mass] : dist.atoms()) {
        Json atom;
        atom["coords"] = block_value_to_json(point);
        atom["mass"] = rat_str(mass);
        atoms.push_back(std::move(atom));
    }
    out["atoms"] = std::move(atoms);
    return out;
}

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputFormatError(std::string("invalid JSON: ") + e.what());
    }
}

Json certificate_to_json(const Certificate& certificate) {
    return std::visit(
        overloaded{
            [](const std::monostate&) { return Json(); },
            [](const ViolatingTriple& t) {
                Json out;
                out["type"] = "triple";
                out["a"] = block_value_to_json(t.a);
                out["b"] = block_value_to_json(t.b);
                out["c"] = block_value_to_json(t.c);
                if (t.exceed_coord) {
                    out["exceedCoord"] = *t.exceed_coord + 1;
                }
                if (t.rectangle) {
                    Json rect;
                    Json avals = Json::array(), bvals = Json::array(), cvals = Json::array();
                    for (const auto& v : t.rectangle->a_values) {
                        avals.push_back(block_value_to_json(v));
                    }
                    for (const auto& v : t.rectangle->b_values) {
                        bvals.push_back(block_value_to_json(v));
                    }
                    for (const auto& v : t.rectangle->c_values) {
                        cvals.push_back(block_value_to_json(v));
                    }
                    rect["a"] = std::move(avals);
                    rect["b"] = std::move(bvals);
                    rect["c"] = std::move(cvals);
                    out["rectangle"] = std::move(rect);
                }
                return out;
            },
            [](const ViolatingSlab& s) {
                Json out;
                out["type"] = "slab";
                out["a"] = block_value_to_json(s.slab.a);
                out["aPrime"] = block_value_to_json(s.slab.a_prime);
                out["b"] = block_value_to_json(s.slab.b);
                out["c"] = block_value_to_json(s.slab.c);
                out["cPrime"] = block_value_to_json(s.slab.c_prime);
                return out;
            },
            [](const InconsistentCycle& c) {
                Json out;
                out["type"] = "cycle";
                out["b"] = block_value_to_json(c.b);
                Json cells = Json::array();
                for (const CycleCell& cell : c.cells) {
                    Json cj;
                    cj["a"] = block_value_to_json(cell.a);
                    cj["c"] = block_value_to_json(cell.c);
                    cells.push_back(std::move(cj));
                }
                out["cells"] = std::move(cells);
                return out;
            },
            [](const WitnessRef& w) {
                Json out;
                out["type"] = "witness";
                out["method"] = w.method;
                return out;
            },
        },
        certificate);
}

} // namespace

std::string dump_distribution(const FiniteDistribution& dist, int indent) {
    return dump(distribution_to_json(dist), indent);
}

FiniteDistribution parse_distribution(const std::string& text) {
    const Json j = parse_text(text);
    if (!j.is_object() || !j.contains("dimension") || !j.contains("atoms")) {
        throw InputFormatError("distribution needs \"dimension\" and \"atoms\" fields");
    }
    const Json& dim = j.at("dimension");
    if (!dim.is_number_integer() || (!dim.is_number_unsigned() && dim.get<std::int64_t>() < 0)) {
        throw InputFormatError("\"dimension\" must be a nonnegative integer");
    }
    const Json& atoms_json = j.at("atoms");
    if (!atoms_json.is_array()) {
        throw InputFormatError("\"atoms\" must be an array");
    }
    FiniteDistribution::AtomMap atoms;
    for (const Json& atom : atoms_json) {
        if (!atom.is_object() || !atom.contains("coords") || !atom.contains("mass")) {
            throw InputFormatError("each atom needs \"coords\" and \"mass\"");
        }
        Point point = block_value_from_json(atom.at("coords"), "coordinate");
        Rat mass = rat_from_json(atom.at("mass"), "mass");
        if (!atoms.emplace(std::move(point), std::move(mass)).second) {
            throw InputFormatError("duplicate atom in \"atoms\"");
        }
    }
    return FiniteDistribution::from_atoms(dim.get<std::size_t>(), std::move(atoms));
}

std::string dump_region(const Region& region, int indent) {
    const Json out = std::visit(
        overloaded{
            [](const EHRegion& r) {
                Json j;
                j["type"] = "eh";
                j["threshold"] = rat_str(r.threshold);
                return j;
            },
            [](const CrossRegion& r) {
                Json j;
                j["type"] = "cross";
                j["threshold"] = rat_str(r.threshold);
                return j;
            },
            [](const ExplicitSet& r) {
                Json j;
                j["type"] = "explicit";
                Json points = Json::array();
                for (const Point& p : r.points) points.push_back(block_value_to_json(p));
                j["points"] = std::move(points);
                return j;
            },
        },
        region);
    return dump(out, indent);
}

Region parse_region(const std::string& text, const BlockPartition& partition) {
    const Json j = parse_text(text);
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        throw InputFormatError("region needs a string \"type\" field");
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "eh" || type == "cross") {
        if (!j.contains("threshold")) {
            throw InputFormatError("region type \"" + type + "\" needs a \"threshold\"");
        }
        const Rat t = rat_from_json(j.at("threshold"), "threshold");
        if (type == "eh") return Region{EHRegion(t)};
        return Region{CrossRegion(partition, t)};
    }
    if (type == "explicit") {
        if (!j.contains("points") || !j.at("points").is_array()) {
            throw InputFormatError("explicit region needs a \"points\" array");
        }
        std::set<Point> points;
        for (const Json& p : j.at("points")) {
            points.insert(block_value_from_json(p, "point"));
        }
        return Region{ExplicitSet(std::move(points))};
    }
    throw InputFormatError("unknown region type \"" + type + "\"");
}

std::string dump_verdict(const CIVerdict& verdict, int indent) {
    Json out;
    out["notion"] = verdict.notion;
    out["holds"] = verdict.holds;
    Json cert = certificate_to_json(verdict.certificate);
    if (!cert.is_null()) out["certificate"] = std::move(cert);
    return dump(out, indent);
}

std::string dump_witness(const Witness& witness, int indent) {
    Json out = distribution_to_json(witness.w);
    out["method"] = witness.method;
    if (witness.lambda) {
        out["lambda"] = rat_str(*witness.lambda);
    }
    const bool has_p = witness.p[0] || witness.p[1] || witness.p[2];
    if (has_p || !witness.arm_masses.empty()) {
        Json p = Json::array();
        for (const auto& entry : witness.p) {
            p.push_back(entry ? Json(rat_str(*entry)) : Json());
        }
        out["p"] = std::move(p);
        Json alpha = Json::array();
        for (const Rat& a : witness.arm_masses) alpha.push_back(rat_str(a));
        out["alpha"] = std::move(alpha);
    }
    out["verified"] = witness.verified;
    return dump(out, indent);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (const unsigned char b : bytes) {
        hash ^= b;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string distribution_digest(const FiniteDistribution& dist) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(dump_distribution(dist, -1));
    return out.str();
}

} // namespace xci
