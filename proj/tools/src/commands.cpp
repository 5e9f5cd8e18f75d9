#include "knv/cli/commands.hpp"

#include <chrono>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "knv/constructions.hpp"
#include "knv/cycle_method.hpp"
#include "knv/family_io.hpp"
#include "knv/freeness.hpp"
#include "knv/patterns.hpp"
#include "knv/posets.hpp"
#include "knv/search.hpp"
#include "knv/version.hpp"

namespace knv::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string big(const BigCount& v) { return v.str(); }

Json set_json(SubsetMask s) { return s.elements(); }

Json family_json(const Family& f) {
    Json arr = Json::array();
    for (SubsetMask s : f) {
        arr.push_back(set_json(s));
    }
    return arr;
}

template <class T>
std::string str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

RunReport start_report(std::string command) {
    RunReport r;
    r.command = std::move(command);
    r.toolkit_version = kToolkitVersion;
    return r;
}

void finish(RunReport& r, Clock::time_point start) {
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

SearchBudget make_budget(double timeout, std::uint64_t max_nodes, unsigned threads) {
    if (timeout < 0) {
        throw std::invalid_argument("timeout must be non-negative");
    }
    SearchBudget b;
    b.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(timeout * 1000.0));
    b.max_nodes = max_nodes;
    b.threads = std::max(1u, threads);
    return b;
}

/// k for a pattern that is a single odd cycle C_{2k+1}.
int odd_cycle_k(const PatternGraph& g) {
    const int v = g.vertex_count();
    const auto og = odd_girth(g);
    if (!og || *og != v || g.edge_count() != static_cast<std::size_t>(v) || g.max_degree() != 2) {
        throw std::invalid_argument("bounds needs an odd cycle pattern C<2k+1>, got " + describe(g));
    }
    return (v - 1) / 2;
}

}  // namespace

NRange parse_n_range(const std::string& text) {
    auto parse = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw std::invalid_argument("bad n range '" + text + "'");
        }
        return v;
    };
    NRange r;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        r.lo = parse(text.substr(0, dots));
        r.hi = parse(text.substr(dots + 2));
    } else {
        r.lo = r.hi = parse(text);
    }
    if (r.lo > r.hi) {
        throw std::invalid_argument("empty n range '" + text + "'");
    }
    return r;
}

CommandResult cmd_vex(const VexArgs& args) {
    const auto start = Clock::now();
    CommandResult out;
    out.report = start_report("vex");
    RunReport& rep = out.report;
    rep.params = {{"n", str(args.n)},
                  {"pattern", args.pattern},
                  {"mode", args.bounds ? "bounds" : "exact"},
                  {"timeout", str(args.timeout)},
                  {"max_nodes", str(args.max_nodes)},
                  {"threads", str(args.threads)}};
    const GroundSize n(args.n);
    const PatternGraph g = resolve_pattern(args.pattern);
    Json& res = rep.results;
    res["pattern"] = describe(g);
    if (args.bounds) {
        VexBounds b = vex_bounds(n, g);
        res["mode"] = "bounds";
        res["lower"] = big(b.lower);
        res["upper"] = b.upper ? Json(big(*b.upper)) : Json(nullptr);
        res["lower_source"] = b.lower_source;
        res["upper_source"] = b.upper_source;
        res["witness_verified"] = b.witness_verified;
        res["witness"] = family_json(b.witness);
        out.passed = !b.upper || b.lower <= *b.upper;
    } else {
        VexResult r = vex_exact(n, g, make_budget(args.timeout, args.max_nodes, args.threads));
        res["mode"] = "exact";
        res["value"] = big(r.value);
        res["exact"] = r.exact;
        res["upper"] = big(r.upper);
        res["lower_source"] = r.lower_bound_source;
        res["upper_source"] = r.upper_bound_source;
        res["nodes"] = r.nodes;
        res["witness"] = family_json(r.witness);
        out.passed = r.exact;
    }
    finish(rep, start);
    return out;
}

CommandResult cmd_table(const TableArgs& args) {
    const auto start = Clock::now();
    CommandResult out;
    out.report = start_report("table");
    RunReport& rep = out.report;
    rep.params = {{"pattern", args.pattern},
                  {"n", args.n_range},
                  {"exact_max", str(args.exact_max)},
                  {"timeout", str(args.timeout)},
                  {"threads", str(args.threads)}};
    const NRange range = parse_n_range(args.n_range);
    const PatternGraph g = resolve_pattern(args.pattern);
    std::ostringstream csv;
    csv << "n,lower,upper,exact\n";
    Json rows = Json::array();
    out.passed = true;
    for (int nv = range.lo; nv <= range.hi; ++nv) {
        const GroundSize n(nv);
        VexBounds b = vex_bounds(n, g);
        std::optional<BigCount> exact;
        if (b.upper && *b.upper == b.lower) {
            exact = b.lower;
        } else if (nv <= args.exact_max) {
            VexResult r = vex_exact(n, g, make_budget(args.timeout, 0, args.threads));
            if (r.exact) {
                exact = r.value;
            }
        }
        bool ok = !b.upper || b.lower <= *b.upper;
        if (exact) {
            ok = ok && b.lower <= *exact && (!b.upper || *exact <= *b.upper);
        }
        out.passed = out.passed && ok && (b.witness_verified || nv > kMaxVerifiedBoundsGround);
        csv << nv << ',' << big(b.lower) << ',' << (b.upper ? big(*b.upper) : "") << ','
            << (exact ? big(*exact) : "") << '\n';
        rows.push_back({{"n", nv},
                        {"lower", big(b.lower)},
                        {"upper", b.upper ? Json(big(*b.upper)) : Json(nullptr)},
                        {"exact", exact ? Json(big(*exact)) : Json(nullptr)},
                        {"lower_source", b.lower_source}});
    }
    rep.results["pattern"] = describe(g);
    rep.results["rows"] = std::move(rows);
    out.csv = csv.str();
    finish(rep, start);
    return out;
}

CommandResult cmd_la(const LaArgs& args) {
    const auto start = Clock::now();
    CommandResult out;
    out.report = start_report("la");
    RunReport& rep = out.report;
    std::string joined;
    for (const auto& p : args.posets) {
        joined += (joined.empty() ? "" : ";") + p;
    }
    rep.params = {{"n", str(args.n)},
                  {"posets", joined},
                  {"symmetric", args.symmetric ? "true" : "false"},
                  {"timeout", str(args.timeout)},
                  {"max_nodes", str(args.max_nodes)},
                  {"threads", str(args.threads)}};
    if (args.posets.empty()) {
        throw std::invalid_argument("la needs at least one --poset");
    }
    std::vector<Poset> forbidden;
    for (const auto& p : args.posets) {
        forbidden.push_back(resolve_poset(p));
    }
    LaResult r = la(GroundSize(args.n), forbidden, args.symmetric,
                    make_budget(args.timeout, args.max_nodes, args.threads));
    bool free = true;
    for (const Poset& p : forbidden) {
        free = free && !contains_poset_copy(r.witness, p);
    }
    rep.results["value"] = big(r.value);
    rep.results["exact"] = r.exact;
    rep.results["upper"] = big(r.upper_bound);
    rep.results["witness_free"] = free;
    rep.results["witness"] = family_json(r.witness);
    out.passed = r.exact && free;
    finish(rep, start);
    return out;
}

CommandResult cmd_eposet(const EposetArgs& args) {
    const auto start = Clock::now();
    CommandResult out;
    out.report = start_report("eposet");
    RunReport& rep = out.report;
    rep.params = {{"poset", args.poset}, {"nmax", str(args.n_max)}};
    const Poset p = resolve_poset(args.poset);
    EResult e = e_of_poset(p, args.n_max);
    rep.results["k"] = e.k;
    rep.results["k_is_lower_bound"] = !e.certificate.has_value();
    out.passed = true;
    if (e.certificate) {
        bool in_levels = true;
        Json image = Json::array();
        for (SubsetMask s : e.certificate->image) {
            in_levels = in_levels && s.size() >= e.certificate_lo && s.size() <= e.certificate_hi;
            image.push_back(set_json(s));
        }
        const bool valid = in_levels && is_poset_copy(*e.certificate, p);
        rep.results["certificate"] = {{"n", e.certificate_n},
                                      {"levels", {e.certificate_lo, e.certificate_hi}},
                                      {"image", std::move(image)},
                                      {"valid", valid}};
        out.passed = valid;
    } else {
        rep.results["certificate"] = nullptr;
    }
    finish(rep, start);
    return out;
}

CommandResult cmd_verify(const VerifyArgs& args) {
    const auto start = Clock::now();
    CommandResult out;
    out.report = start_report("verify");
    RunReport& rep = out.report;
    rep.params = {{"construction", args.construction}, {"n", str(args.n)}};
    auto note = [&](const char* key, const std::optional<int>& v) {
        if (v) {
            rep.params[key] = str(*v);
        }
    };
    note("k", args.k);
    note("r", args.r);
    note("x", args.x);

    const ConstructionName name = parse_construction_name(args.construction);
    auto need = [&](const std::optional<int>& v, const char* flag) {
        if (!v) {
            throw std::invalid_argument(args.construction + " needs --" + flag);
        }
        return *v;
    };
    int param = 0;
    switch (name) {
        case ConstructionName::Star:
            param = args.x.value_or(1);
            break;
        case ConstructionName::MatchingExtremal:
        case ConstructionName::Threshold:
            param = need(args.k, "k");
            break;
        case ConstructionName::CliqueThreshold:
            param = need(args.r, "r");
            break;
        default:
            break;
    }
    const NamedConstruction c = make_construction(name, GroundSize(args.n), param);
    const ConstructionVerdict v = verify_construction(c);
    Json& res = rep.results;
    res["construction"] = std::string(to_string(name));
    res["param"] = param;
    res["size"] = c.family.size();
    res["claimed_size"] = big(c.claimed_size);
    res["size_matches"] = v.size_matches;
    res["claimed_free_of"] = c.claimed_free_of_name;
    res["free"] = v.free;
    if (v.witness) {
        Json copy = Json::array();
        for (std::size_t idx : v.witness->map) {
            copy.push_back(set_json(c.family[idx]));
        }
        res["witness"] = std::move(copy);
    } else {
        res["witness"] = nullptr;
    }
    res["passed"] = v.passed();
    out.passed = v.passed();
    finish(rep, start);
    return out;
}

Family random_proper_family(GroundSize n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SubsetMask> members;
    for (std::uint32_t b = 1; b < n.full_bits(); ++b) {
        // Top bit of each draw: mt19937_64 output is fixed by the standard.
        if ((rng() >> 63) != 0) {
            members.emplace_back(b);
        }
    }
    return Family(n, std::move(members));
}

CommandResult cmd_cyclecheck(const CyclecheckArgs& args) {
    const auto start = Clock::now();
    CommandResult out;
    out.report = start_report("cyclecheck");
    RunReport& rep = out.report;
    rep.params = {{"n", str(args.n)},
                  {"family", args.family},
                  {"seed", str(args.seed)},
                  {"threads", str(args.threads)}};
    Family family = args.family == "random" ? random_proper_family(GroundSize(args.n), args.seed)
                                            : load_family_file(args.family);
    if (args.n != 0 && family.ground().value() != args.n) {
        throw std::invalid_argument("family file is over n=" + str(family.ground().value()) +
                                    ", but --n " + str(args.n) + " was given");
    }
    const DoubleCount d = double_count_check(family, std::max(1u, args.threads));
    rep.results["n"] = family.ground().value();
    rep.results["family_size"] = family.size();
    rep.results["lhs"] = big(d.lhs);
    rep.results["rhs"] = big(d.rhs);
    rep.results["equal"] = d.equal;
    out.passed = d.equal;
    finish(rep, start);
    return out;
}

CommandResult cmd_bounds(const BoundsArgs& args) {
    const auto start = Clock::now();
    CommandResult out;
    out.report = start_report("bounds");
    RunReport& rep = out.report;
    rep.params = {{"pattern", args.pattern}, {"n", args.n_range}, {"format", args.csv ? "csv" : "json"}};
    const int k = odd_cycle_k(resolve_pattern(args.pattern));
    const NRange range = parse_n_range(args.n_range);
    std::ostringstream csv;
    csv << "n,k,lower,upper\n";
    Json rows = Json::array();
    out.passed = true;
    for (int nv = range.lo; nv <= range.hi; ++nv) {
        const GroundSize n(nv);
        const BigCount lower = threshold_lower_bound(n, k);
        const BigCount upper = cycle_upper_bound(n, k);
        out.passed = out.passed && lower <= upper;
        csv << nv << ',' << k << ',' << big(lower) << ',' << big(upper) << '\n';
        rows.push_back({{"n", nv}, {"lower", big(lower)}, {"upper", big(upper)}});
    }
    rep.results["k"] = k;
    rep.results["shift_constant"] = cycle_shift_constant(k);
    rep.results["rows"] = std::move(rows);
    if (args.csv) {
        out.csv = csv.str();
    }
    finish(rep, start);
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vertex Turan problems in the Kneser cube"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolkitVersion);

    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for search and enumeration")
        ->envname("KNV_THREADS")
        ->check(CLI::PositiveNumber);

    VexArgs vex;
    auto* vex_cmd = app.add_subcommand("vex", "Compute vex(n, G) exactly or bound it");
    vex_cmd->add_option("--n", vex.n, "Ground set size")->required();
    vex_cmd->add_option("--pattern", vex.pattern, "Pattern name (M2, C5, K2,3, ...) or file")->required();
    auto* exact_flag = vex_cmd->add_flag("--exact", "Branch-and-bound search (default)");
    vex_cmd->add_flag("--bounds", vex.bounds, "Construction and closed-form bounds only")->excludes(exact_flag);
    vex_cmd->add_option("--timeout", vex.timeout, "Seconds; 0 is unlimited");
    vex_cmd->add_option("--max-nodes", vex.max_nodes, "Node budget; 0 is unlimited");

    TableArgs table;
    bool table_json = false;
    auto* table_cmd = app.add_subcommand("table", "Sweep n and print lower/upper/exact as CSV");
    table_cmd->add_option("--pattern", table.pattern)->required();
    table_cmd->add_option("--n", table.n_range, "Range a..b")->required();
    table_cmd->add_option("--exact-max", table.exact_max, "Run exact search up to this n");
    table_cmd->add_option("--timeout", table.timeout, "Seconds per exact search");
    table_cmd->add_flag("--json", table_json, "Print the run report instead of CSV");

    LaArgs la_args;
    auto* la_cmd = app.add_subcommand("la", "Largest family avoiding the given posets");
    la_cmd->add_option("--n", la_args.n)->required();
    la_cmd->add_option("--poset", la_args.posets, "Poset name or file; repeatable")->required();
    la_cmd->add_flag("--symmetric", la_args.symmetric, "Only complement-closed families");
    la_cmd->add_option("--timeout", la_args.timeout);
    la_cmd->add_option("--max-nodes", la_args.max_nodes);

    EposetArgs eposet;
    auto* eposet_cmd = app.add_subcommand("eposet", "Certify e(P) up to a ground size");
    eposet_cmd->add_option("--poset", eposet.poset)->required();
    eposet_cmd->add_option("--nmax", eposet.n_max)->check(CLI::Range(1, 12));

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check a construction's size and freeness");
    verify_cmd->add_option("--construction", verify.construction)->required();
    verify_cmd->add_option("--n", verify.n)->required();
    verify_cmd->add_option("--k", verify.k);
    verify_cmd->add_option("--r", verify.r);
    verify_cmd->add_option("--x", verify.x);

    CyclecheckArgs cyc;
    auto* cyc_cmd = app.add_subcommand("cyclecheck", "Double count interval weights over cyclic permutations");
    cyc_cmd->add_option("--n", cyc.n, "Required for random families");
    cyc_cmd->add_option("--family", cyc.family, "Family file, or 'random'");
    cyc_cmd->add_option("--seed", cyc.seed);

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "Odd-cycle lower/upper sandwich");
    bounds_cmd->add_option("--pattern", bounds.pattern, "C<2k+1>")->required();
    bounds_cmd->add_option("--n", bounds.n_range, "n or a..b")->required();
    bounds_cmd->add_flag("--csv", bounds.csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        CommandResult result;
        bool print_csv = false;
        if (*vex_cmd) {
            vex.threads = threads;
            result = cmd_vex(vex);
        } else if (*table_cmd) {
            table.threads = threads;
            result = cmd_table(table);
            print_csv = !table_json;
        } else if (*la_cmd) {
            la_args.threads = threads;
            result = cmd_la(la_args);
        } else if (*eposet_cmd) {
            result = cmd_eposet(eposet);
        } else if (*verify_cmd) {
            result = cmd_verify(verify);
        } else if (*cyc_cmd) {
            if (cyc.family == "random" && cyc.n == 0) {
                throw std::invalid_argument("cyclecheck with a random family needs --n");
            }
            cyc.threads = threads;
            result = cmd_cyclecheck(cyc);
        } else {
            result = cmd_bounds(bounds);
            print_csv = bounds.csv;
        }
        if (print_csv) {
            out << result.csv;
        } else {
            out << to_json(result.report).dump(2) << '\n';
        }
        return result.passed ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace knv::cli
