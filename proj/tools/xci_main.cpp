#include "xci/checks.hpp"
#include "xci/errors.hpp"
#include "xci/generators.hpp"
#include "xci/io.hpp"
#include "xci/suite.hpp"
#include "xci/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;
using xci::Rat;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw xci::InputFormatError("cannot open \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw xci::InputFormatError("cannot write \"" + out_path + "\"");
    }
    out << text << "\n";
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

// First coordinate to A, last to C, the rest to B.
xci::BlockPartition default_partition(std::size_t dimension) {
    if (dimension < 2) {
        throw xci::InvalidPartition("no default partition for dimension " +
                                    std::to_string(dimension) + ", pass --partition");
    }
    std::vector<std::size_t> b;
    for (std::size_t i = 1; i + 1 < dimension; ++i) b.push_back(i);
    return xci::BlockPartition(dimension, {0}, std::move(b), {dimension - 1});
}

xci::BlockPartition make_partition(const std::string& spec, std::size_t dimension) {
    if (spec.empty()) return default_partition(dimension);
    return xci::parse_partition_spec(spec, dimension);
}

xci::Region make_region(const std::string& spec, const xci::BlockPartition& partition,
                        const Rat& threshold) {
    if (spec == "eh") return xci::Region{xci::EHRegion(threshold)};
    if (spec == "cross") return xci::Region{xci::CrossRegion(partition, threshold)};
    if (spec.rfind("explicit:", 0) == 0) {
        return xci::parse_region(read_file(spec.substr(9)), partition);
    }
    throw xci::InputFormatError("unknown region \"" + spec +
                                "\", expected eh, cross, or explicit:<path>");
}

Json partition_to_json(const xci::BlockPartition& partition) {
    Json out;
    const auto block = [&](xci::Block b) {
        Json arr = Json::array();
        for (std::size_t i : partition.indices(b)) arr.push_back(i + 1);
        return arr;
    };
    out["A"] = block(xci::Block::A);
    out["B"] = block(xci::Block::B);
    out["C"] = block(xci::Block::C);
    return out;
}

Json reparse(const std::string& dumped) { return Json::parse(dumped); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t rect_cap_from(const std::optional<std::size_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("XCI_RECT_CAP")) {
        std::size_t value = 0;
        const char* end = env + std::string_view(env).size();
        const auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc() || ptr != end) {
            throw xci::InputFormatError("XCI_RECT_CAP must be an unsigned integer");
        }
        return value;
    }
    return xci::kDefaultRectangleCap;
}

struct CheckArgs {
    std::string input, out, partition, region = "eh", threshold = "1";
    std::string notions = "eh,inner,outer";
    std::optional<std::size_t> slab_cap, rect_cap;
};

int run_check(const CheckArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    const xci::FiniteDistribution dist = xci::parse_distribution(read_file(args.input));
    const xci::BlockPartition partition = make_partition(args.partition, dist.dimension());
    const Rat threshold = xci::parse_rat(args.threshold);
    const xci::Region region = make_region(args.region, partition, threshold);
    const std::size_t slab_cap = args.slab_cap.value_or(xci::kUnlimitedEnumeration);
    const std::size_t rect_cap = rect_cap_from(args.rect_cap);

    Json verdicts = Json::array();
    for (const std::string& notion : split(args.notions, ',')) {
        xci::CIVerdict v{"", false, {}};
        if (notion == "plain") {
            v = xci::check_plain_ci(dist, partition);
        } else if (notion == "eh") {
            v = xci::check_eh_ci(dist, partition, threshold);
        } else if (notion == "inner") {
            v = xci::check_inner_ci(dist, partition, region, slab_cap);
        } else if (notion == "inner-bf") {
            v = xci::check_inner_ci_bruteforce(dist, partition, region, rect_cap);
        } else if (notion == "outer") {
            v = xci::check_outer_ci(dist, partition);
        } else {
            throw xci::InputFormatError("unknown notion \"" + notion + "\"");
        }
        verdicts.push_back(reparse(xci::dump_verdict(v, -1)));
    }

    Json report;
    report["command"] = "check";
    report["digest"] = xci::distribution_digest(dist);
    report["partition"] = partition_to_json(partition);
    report["region"] = reparse(xci::dump_region(region, -1));
    report["threshold"] = xci::rat_str(threshold);
    report["verdicts"] = std::move(verdicts);
    report["input"] = reparse(xci::dump_distribution(dist, -1));
    report["timing"] = Json{{"seconds", seconds_since(start)}};
    write_output(args.out, report.dump(2));
    return 0;
}

struct WitnessArgs {
    std::string input, out, partition, method, threshold = "1";
};

int run_witness(const WitnessArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    const xci::FiniteDistribution dist = xci::parse_distribution(read_file(args.input));
    const xci::BlockPartition partition = make_partition(args.partition, dist.dimension());
    const Rat threshold = xci::parse_rat(args.threshold);

    Json report;
    report["command"] = "witness";
    report["digest"] = xci::distribution_digest(dist);
    report["partition"] = partition_to_json(partition);
    report["threshold"] = xci::rat_str(threshold);
    report["method"] = args.method;

    const auto emit_failure = [&](const xci::Error& e, const xci::CIVerdict* verdict) {
        Json error;
        error["message"] = e.what();
        if (verdict != nullptr) {
            error["verdict"] = reparse(xci::dump_verdict(*verdict, -1));
        }
        report["error"] = std::move(error);
        report["timing"] = Json{{"seconds", seconds_since(start)}};
        write_output(args.out, report.dump(2));
        return 3;
    };

    try {
        xci::Witness witness = [&] {
            if (args.method == "prop1") return xci::build_prop1_witness(dist, partition, threshold);
            if (args.method == "prop2") return xci::build_prop2_witness(dist, partition, threshold);
            if (args.method == "generic") return xci::build_outer_witness_generic(dist, partition);
            throw xci::InputFormatError("unknown method \"" + args.method +
                                        "\", expected prop1, prop2, or generic");
        }();
        report["witness"] = reparse(xci::dump_witness(witness, -1));
        report["timing"] = Json{{"seconds", seconds_since(start)}};
        write_output(args.out, report.dump(2));
        return 0;
    } catch (const xci::PreconditionEHFailed& e) {
        return emit_failure(e, &e.verdict);
    } catch (const xci::OuterCheckFailed& e) {
        return emit_failure(e, &e.verdict);
    } catch (const xci::SupportNotCross& e) {
        return emit_failure(e, nullptr);
    } catch (const xci::CornerMassZero& e) {
        return emit_failure(e, nullptr);
    } catch (const xci::VerificationFailed& e) {
        return emit_failure(e, nullptr);
    }
}

struct GenerateArgs {
    std::string family, input, out, partition, region = "eh", threshold = "1";
    std::uint64_t seed = 0;
    std::size_t d = 0;
    std::string grid, arms, tail, arm_weight = "1/2", epsilon;
};

xci::GridSpec parse_grid(const std::string& text) {
    xci::GridSpec grid;
    for (const std::string& coord : split(text, ';')) {
        std::vector<Rat> values;
        for (const std::string& v : split(coord, ',')) values.push_back(xci::parse_rat(v));
        grid.values.push_back(std::move(values));
    }
    xci::validate_grid_spec(grid);
    return grid;
}

int run_generate(const GenerateArgs& args) {
    const Rat threshold = xci::parse_rat(args.threshold);
    xci::FiniteDistribution dist = [&] {
        if (args.family == "product-ci") {
            const std::size_t d = args.d == 0 ? 2 : args.d;
            const xci::BlockPartition partition = make_partition(args.partition, d);
            const xci::Region region = make_region(args.region, partition, threshold);
            xci::Rng rng(args.seed);
            const xci::GridSpec grid =
                args.grid.empty()
                    ? xci::random_grid_spec(rng, threshold,
                                            std::vector<xci::CoordinateRange>(
                                                d, xci::CoordinateRange{2, 4, 1}))
                    : parse_grid(args.grid);
            if (grid.dimension() != d) {
                throw xci::InputFormatError("--grid dimension does not match --d");
            }
            return xci::gen_product_ci(rng.bits(), grid, partition, region);
        }
        if (args.family == "perturbed") {
            if (args.input.empty()) {
                throw xci::InputFormatError("--family perturbed needs --input");
            }
            const xci::FiniteDistribution base = xci::parse_distribution(read_file(args.input));
            const xci::BlockPartition partition = make_partition(args.partition,
                                                                 base.dimension());
            const xci::Region region = make_region(args.region, partition, threshold);
            const auto slabs = xci::enumerate_slabs(xci::support(base), partition, region);
            std::vector<xci::Slab> full;
            for (const xci::Slab& s : slabs) {
                const bool atoms = base.contains(partition.assemble(s.a, s.b, s.c)) &&
                                   base.contains(partition.assemble(s.a, s.b, s.c_prime)) &&
                                   base.contains(partition.assemble(s.a_prime, s.b, s.c)) &&
                                   base.contains(partition.assemble(s.a_prime, s.b, s.c_prime));
                if (atoms) full.push_back(s);
            }
            if (full.empty()) {
                throw xci::SlabNotInSupport("no slab has all four corners in the support");
            }
            xci::Rng rng(args.seed);
            const xci::Slab slab = full[rng.index(full.size())];
            const Rat m12 = base.mass(partition.assemble(slab.a, slab.b, slab.c_prime));
            const Rat m21 = base.mass(partition.assemble(slab.a_prime, slab.b, slab.c));
            const Rat epsilon = args.epsilon.empty() ? (m12 < m21 ? m12 : m21) / 2
                                                     : xci::parse_rat(args.epsilon);
            return xci::gen_perturbed(base, partition, region, slab, epsilon);
        }
        if (args.family == "cross") {
            if (args.arms.empty()) {
                throw xci::InputFormatError("--family cross needs --arms");
            }
            std::vector<std::size_t> counts;
            for (const std::string& part : split(args.arms, ',')) {
                std::size_t value = 0;
                const char* begin = part.data();
                const char* end = begin + part.size();
                const auto [ptr, ec] = std::from_chars(begin, end, value);
                if (ec != std::errc() || ptr != end) {
                    throw xci::InputFormatError("--arms must be a comma list of counts");
                }
                counts.push_back(value);
            }
            std::array<std::size_t, 3> arms{0, 0, 0};
            if (counts.size() == 2) {
                arms = {counts[0], 0, counts[1]};
            } else if (counts.size() == 3) {
                arms = {counts[0], counts[1], counts[2]};
            } else {
                throw xci::InputFormatError("--arms needs 2 (A,C) or 3 (A,B,C) counts");
            }
            const std::size_t d = args.d != 0 ? args.d : (counts.size() == 3 ? 3 : 2);
            const xci::BlockPartition partition = make_partition(args.partition, d);
            return xci::gen_cross(args.seed, partition, arms, threshold);
        }
        if (args.family == "pareto-axes") {
            if (args.tail.empty()) {
                throw xci::InputFormatError("--family pareto-axes needs --tail");
            }
            std::vector<Rat> tail;
            for (const std::string& v : split(args.tail, ',')) tail.push_back(xci::parse_rat(v));
            return xci::gen_pareto_axes(tail, xci::parse_rat(args.arm_weight));
        }
        throw xci::InputFormatError("unknown family \"" + args.family +
                                    "\", expected product-ci, perturbed, cross, or pareto-axes");
    }();
    write_output(args.out, xci::dump_distribution(dist, 2));
    return 0;
}

struct SuiteArgs {
    std::string shape = "eh", out, threshold = "1";
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t d = 0;
};

int run_suite_cmd(const SuiteArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    xci::SuiteOptions options;
    options.shape = args.shape;
    options.trials = args.trials;
    options.seed = args.seed;
    options.dimension = args.d;
    options.threshold = xci::parse_rat(args.threshold);

    const xci::SuiteOutcome outcome = xci::run_suite(options);

    Json report;
    report["command"] = "suite";
    report["shape"] = args.shape;
    report["trials"] = args.trials;
    report["seed"] = args.seed;
    report["instances"] = outcome.instances;
    report["agreements"] = outcome.agreements;
    report["disagreements"] = outcome.instances - outcome.agreements;
    Json failures = Json::array();
    for (const xci::SuiteFailure& f : outcome.failures) {
        Json entry;
        entry["trial"] = f.trial;
        entry["stage"] = f.stage;
        entry["detail"] = f.detail;
        if (f.instance) {
            entry["instance"] = reparse(xci::dump_distribution(*f.instance, -1));
        }
        failures.push_back(std::move(entry));
    }
    report["failures"] = std::move(failures);
    report["timing"] = Json{{"seconds", seconds_since(start)}};
    write_output(args.out, report.dump(2));
    return outcome.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact conditional-independence checks and witnesses for "
                 "finitely supported distributions"};
    app.require_subcommand(1);

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "Evaluate independence notions");
    check->add_option("-i,--input", check_args.input, "Distribution JSON file")->required();
    check->add_option("-o,--out", check_args.out, "Write the report here instead of stdout");
    check->add_option("--partition", check_args.partition,
                      "Blocks as \"A=1;B=;C=2\" with 1-based coordinates (default: first "
                      "coordinate A, last C, rest B)");
    check->add_option("--region", check_args.region, "eh, cross, or explicit:<path>");
    check->add_option("--threshold", check_args.threshold, "Threshold rational (default 1)");
    check->add_option("--notions", check_args.notions,
                      "Comma list from plain,eh,inner,inner-bf,outer");
    check->add_option("--slab-cap", check_args.slab_cap, "Abort if more slabs than this");
    check->add_option("--rect-cap", check_args.rect_cap,
                      "Abort if more rectangles than this (or XCI_RECT_CAP)");

    WitnessArgs witness_args;
    CLI::App* witness = app.add_subcommand("witness", "Build a verified witness distribution");
    witness->add_option("-i,--input", witness_args.input, "Distribution JSON file")->required();
    witness->add_option("-o,--out", witness_args.out, "Write the report here instead of stdout");
    witness->add_option("--partition", witness_args.partition, "Blocks as \"A=1;B=;C=2\"");
    witness->add_option("--method", witness_args.method, "prop1, prop2, or generic")->required();
    witness->add_option("--threshold", witness_args.threshold, "Threshold rational (default 1)");

    GenerateArgs generate_args;
    CLI::App* generate = app.add_subcommand("generate", "Write a seeded family instance");
    generate->add_option("--family", generate_args.family,
                         "product-ci, perturbed, cross, or pareto-axes")
        ->required();
    generate->add_option("-i,--input", generate_args.input,
                         "Base distribution (family perturbed)");
    generate->add_option("-o,--out", generate_args.out, "Write the instance here");
    generate->add_option("--partition", generate_args.partition, "Blocks as \"A=1;B=;C=2\"");
    generate->add_option("--region", generate_args.region, "eh, cross, or explicit:<path>");
    generate->add_option("--threshold", generate_args.threshold, "Threshold rational");
    generate->add_option("--seed", generate_args.seed, "Generator seed");
    generate->add_option("--d", generate_args.d, "Dimension");
    generate->add_option("--grid", generate_args.grid,
                         "Grid values per coordinate, e.g. \"0,2,3;0,2,3\"");
    generate->add_option("--arms", generate_args.arms, "Cross arm atom counts, e.g. \"2,3\"");
    generate->add_option("--tail", generate_args.tail, "Pareto tail grid, e.g. \"2,4\"");
    generate->add_option("--arm-weight", generate_args.arm_weight, "Pareto A-arm weight");
    generate->add_option("--epsilon", generate_args.epsilon, "Perturbation size");

    SuiteArgs suite_args;
    CLI::App* suite = app.add_subcommand("suite", "Run an equivalence suite");
    suite->add_option("--shape", suite_args.shape, "eh or cross");
    suite->add_option("--trials", suite_args.trials, "Number of trials")->required();
    suite->add_option("--seed", suite_args.seed, "Suite seed");
    suite->add_option("--d", suite_args.d, "Dimension (default: 2 for eh, alternating for cross)");
    suite->add_option("--threshold", suite_args.threshold, "Threshold rational");
    suite->add_option("-o,--out", suite_args.out, "Write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) return run_check(check_args);
        if (*witness) return run_witness(witness_args);
        if (*generate) return run_generate(generate_args);
        return run_suite_cmd(suite_args);
    } catch (const xci::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
