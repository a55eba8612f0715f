#pragma once

// Command-line front end. Exit codes: 0 success / PASS, 1 usage or
// validation error, 2 verification FAIL.

#include "nerve/classifying.hpp"
#include "nerve/derham_torus.hpp"
#include "nerve/group_spec.hpp"
#include "nerve/identities.hpp"
#include "nerve/report.hpp"
#include "nerve/smith.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace nerve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;

struct RunConfig {
    std::string command;
    std::string group_path;
    std::string matrix_path;
    std::string coefficients = "q";
    int max_degree = 4;
    std::string format = "text";
    std::size_t resource_cap = 0;
    std::string dump_dir;
    bool timing = false;
    std::size_t rank = 1;
    std::string model = "bt";
    std::size_t levels = 4;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::size_t resource_cap(const RunConfig& cfg)
{
    if (cfg.resource_cap > 0)
        return cfg.resource_cap;
    if (const char* env = std::getenv("NERVE_RESOURCE_CAP")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size() && v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw Error(ErrorCode::SpecError, std::string("NERVE_RESOURCE_CAP='") + env + "' is not a positive integer");
    }
    return kDefaultResourceCap;
}

inline void dump_matrices(const std::string& dir, const GradedComplex& c)
{
    if (dir.empty())
        return;
    std::filesystem::create_directories(dir);
    for (int n = 0; n <= c.max_degree(); ++n) {
        std::ofstream os(std::filesystem::path(dir) / ("d" + std::to_string(n) + ".txt"));
        if (!os)
            throw Error(ErrorCode::SpecError, "cannot write matrix dump into '" + dir + "'");
        write_matrix(os, c.differential(n));
    }
}

inline int emit_betti(const RunConfig& cfg, std::ostream& out, const std::string& pipeline, const std::string& group,
                      const GradedComplex& c, const std::vector<std::string>& notes = {})
{
    dump_matrices(cfg.dump_dir, c);
    const BettiTable t = betti_table(c, RingSpec::parse(cfg.coefficients), cfg.max_degree);
    if (cfg.format == "json") {
        Json j;
        j["command"] = cfg.command;
        j["pipeline"] = pipeline;
        j["group"] = group;
        j["ring"] = t.ring.to_string();
        j["max_degree"] = cfg.max_degree;
        j["degrees"] = degrees_json(t);
        if (!notes.empty())
            j["hypotheses"] = Json{{"notes", notes}};
        out << j.dump(2) << '\n';
    } else {
        out << betti_text(pipeline, group, t);
        for (const auto& n : notes)
            out << "warning: " << n << '\n';
    }
    return kExitOk;
}

inline std::string action_label(const LoadedGroup& lg)
{
    return lg.semidirect ? lg.label : lg.label + " acting on itself by conjugation";
}

inline int run_identities(const RunConfig& cfg, std::ostream& out)
{
    const LoadedGroup lg = load_group_spec(cfg.group_path);
    IdentityConfig ic;
    ic.exhaustive_level = cfg.levels;
    ic.random_level = std::max<std::size_t>(cfg.levels, 2);
    ic.samples = cfg.samples;
    ic.seed = cfg.seed;
    const IdentityReport rep = verify_identities(lg.action(), ic);
    if (cfg.format == "json") {
        Json j;
        j["command"] = cfg.command;
        j["group"] = action_label(lg);
        j["seed"] = cfg.seed;
        j["checks"] = Json::array();
        for (const auto& c : rep.checks)
            j["checks"].push_back(Json{{"name", c.name},
                                       {"exhaustive", c.exhaustive},
                                       {"sampled", c.sampled},
                                       {"failures", c.failures},
                                       {"first_failure", c.first_failure}});
        j["verdict"] = rep.ok() ? "PASS" : "FAIL";
        out << j.dump(2) << '\n';
    } else {
        out << "group: " << action_label(lg) << '\n';
        for (const auto& c : rep.checks) {
            out << (c.ok() ? "ok   " : "FAIL ") << c.name << "  exhaustive=" << c.exhaustive << " sampled=" << c.sampled;
            if (!c.ok())
                out << " failures=" << c.failures << " first: " << c.first_failure;
            out << '\n';
        }
        out << "verdict: " << (rep.ok() ? "PASS" : "FAIL") << '\n';
    }
    return rep.ok() ? kExitOk : kExitFail;
}

inline int run_snf(const RunConfig& cfg, std::ostream& out)
{
    std::ifstream in(cfg.matrix_path);
    if (!in)
        throw Error(ErrorCode::SpecError, "cannot open matrix '" + cfg.matrix_path + "'");
    const SparseMatrix m = read_matrix(in);
    const auto factors = invariant_factors(m);
    std::vector<std::string> text;
    for (const auto& f : factors)
        text.push_back(f.str());
    if (cfg.format == "json") {
        Json j;
        j["command"] = cfg.command;
        j["rows"] = m.rows();
        j["cols"] = m.cols();
        j["rank"] = factors.size();
        j["invariant_factors"] = text;
        out << j.dump(2) << '\n';
    } else {
        out << "rows: " << m.rows() << "  cols: " << m.cols() << "  rank: " << factors.size() << '\n' << "invariant factors:";
        for (const auto& s : text)
            out << ' ' << s;
        out << '\n';
    }
    return kExitOk;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out)
{
    const std::size_t cap = resource_cap(cfg);
    if (cfg.command == "betti-bg") {
        const LoadedGroup lg = load_group_spec(cfg.group_path);
        return emit_betti(cfg, out, "bg_complex", lg.label, bg_complex(lg.group, cfg.max_degree, cap));
    }
    if (cfg.command == "betti-bsemidirect") {
        const LoadedGroup lg = load_group_spec(cfg.group_path);
        return emit_betti(cfg, out, "bsemidirect_triple_complex", action_label(lg),
                          bsemidirect_triple_complex(lg.action(), cfg.max_degree, cap));
    }
    if (cfg.command == "betti-equivariant") {
        const LoadedGroup lg = load_group_spec(cfg.group_path);
        auto eq = weinstein_equivariant_complex(lg.action(), RingSpec::parse(cfg.coefficients), cfg.max_degree, cap);
        return emit_betti(cfg, out, "weinstein_equivariant_complex", action_label(lg), eq.complex, eq.warnings);
    }
    if (cfg.command == "betti-btorus") {
        const std::string group = "T^" + std::to_string(cfg.rank);
        if (cfg.model == "bt")
            return emit_betti(cfg, out, "bt_double_complex", group, bt_double_complex(cfg.rank, cfg.max_degree));
        if (cfg.model == "weinstein")
            return emit_betti(cfg, out, "weinstein_torus_complex", group + " x| " + group,
                              weinstein_torus_complex(cfg.rank, cfg.max_degree));
        return emit_betti(cfg, out, "cartan_free_circle", "S^1 acting freely on S^1", cartan_free_circle(cfg.max_degree));
    }
    if (cfg.command == "verify-theorem41") {
        const LoadedGroup lg = load_group_spec(cfg.group_path);
        const ComparisonReport rep =
            verify_theorem41(lg.action(), RingSpec::parse(cfg.coefficients), cfg.max_degree, cap, action_label(lg));
        if (cfg.format == "json")
            out << comparison_json(rep, cfg.timing).dump(2) << '\n';
        else
            out << comparison_text(rep, cfg.timing);
        for (const auto& w : rep.warnings)
            if (cfg.format != "json")
                out << "warning: " << w << '\n';
        switch (rep.verdict) {
        case Verdict::Pass: return kExitOk;
        case Verdict::Fail: return kExitFail;
        case Verdict::Incomplete: return kExitError;
        }
    }
    if (cfg.command == "verify-identities")
        return run_identities(cfg, out);
    if (cfg.command == "snf")
        return run_snf(cfg, out);
    throw Error(ErrorCode::SpecError, "unknown command '" + cfg.command + "'");
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Exact cochain models of classifying spaces and their comparison"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_group) {
        if (needs_group)
            sub->add_option("--group", cfg.group_path, "Group spec file (JSON)")->required();
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_pipeline = [&](CLI::App* sub, bool needs_group) {
        add_common(sub, needs_group);
        sub->add_option("--coefficients", cfg.coefficients, "Coefficient ring: z, q or fp:<prime>");
        sub->add_option("--max-degree", cfg.max_degree, "Highest cohomological degree")->check(CLI::NonNegativeNumber);
        sub->add_option("--resource-cap", cfg.resource_cap, "Largest cochain-space dimension per degree");
        sub->add_option("--dump-matrices", cfg.dump_dir, "Write differentials d<n>.txt into this directory");
    };

    add_pipeline(app.add_subcommand("betti-bg", "Cohomology of BG from the nerve complex"), true);
    add_pipeline(app.add_subcommand("betti-bsemidirect", "Cohomology of B(G x| H) from the bisimplicial triple complex"), true);
    add_pipeline(app.add_subcommand("betti-equivariant", "Cohomology of the H-invariant nerve complex of G"), true);
    auto* torus = app.add_subcommand("betti-btorus", "Invariant de Rham models on torus nerves");
    add_pipeline(torus, false);
    torus->add_option("--rank", cfg.rank, "Torus rank n");
    torus->add_option("--model", cfg.model, "bt | weinstein | cartan-circle")
        ->check(CLI::IsMember({"bt", "weinstein", "cartan-circle"}));
    auto* verify = app.add_subcommand("verify-theorem41", "Compare the three models of B(G x| H)");
    add_pipeline(verify, true);
    verify->add_flag("--timing", cfg.timing, "Include wall-clock times in the report");
    auto* ids = app.add_subcommand("verify-identities", "Check simplicial and bisimplicial identities");
    add_common(ids, true);
    ids->add_option("--levels", cfg.levels, "Largest level enumerated exhaustively")->check(CLI::PositiveNumber);
    ids->add_option("--samples", cfg.samples, "Random samples per property");
    ids->add_option("--seed", cfg.seed, "Seed of the sampler");
    auto* snf = app.add_subcommand("snf", "Smith invariant factors of a dumped matrix");
    add_common(snf, false);
    snf->add_option("--matrix", cfg.matrix_path, "Matrix in 'rows cols' + 'r c v' format")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return detail::dispatch(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

} // namespace nerve::cli
