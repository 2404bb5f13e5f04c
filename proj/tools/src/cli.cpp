#include "shiftfp_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shiftfp/config.hpp"
#include "shiftfp/corpus.hpp"
#include "shiftfp/error.hpp"
#include "shiftfp/expression.hpp"
#include "shiftfp/pipeline.hpp"
#include "shiftfp/report_json.hpp"
#include "shiftfp/seed.hpp"
#include "shiftfp/solver.hpp"
#include "shiftfp/verifier.hpp"

namespace shiftfp::cli {

using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string instance_name;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

// Everything a command may need, gathered from either --config or --instance.
struct Problem {
    std::string name;
    SpacePtr space;
    std::optional<SelfMap> map;
    std::optional<ShiftingPair> pair;
    std::optional<Point> x0;
    std::optional<Expectation> expected;
    CheckSettings checks;
    PicardOptions picard;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Problem from_instance(const Instance& inst) {
    Problem p;
    p.name = inst.name;
    p.space = inst.space;
    p.map = inst.map;
    p.pair = inst.pair;
    p.x0 = inst.x0;
    p.expected = inst.expected;
    return p;
}

Problem load_problem(const GlobalOptions& g) {
    Problem p;
    if (!g.config_path.empty() && !g.instance_name.empty()) {
        throw UsageError("--config and --instance are mutually exclusive");
    }
    if (!g.config_path.empty()) {
        Config cfg = load_config_file(g.config_path);
        p.name = cfg.name.empty() ? "config" : cfg.name;
        p.space = cfg.space;
        p.map = cfg.map;
        p.pair = cfg.pair;
        if (cfg.solver.x0) p.x0 = Point{*cfg.solver.x0};
        p.expected = cfg.expected;
        p.checks = cfg.checks;
        p.picard = cfg.solver.picard;
    } else if (!g.instance_name.empty()) {
        p = from_instance(instance(g.instance_name));
    } else {
        throw UsageError("one of --config PATH or --instance NAME is required");
    }
    if (g.seed) p.checks.seed = *g.seed;
    return p;
}

const MetricSpace& need_space(const Problem& p) {
    if (!p.space) throw ConfigError("space", "missing required section");
    return *p.space;
}
const SelfMap& need_map(const Problem& p) {
    if (!p.map) throw ConfigError("map", "missing required section");
    return *p.map;
}
const ShiftingPair& need_pair(const Problem& p) {
    if (!p.pair) throw ConfigError("pair", "missing required section");
    return *p.pair;
}

json envelope(const std::string& command, const Problem& p) {
    return {{"schema_version", kSchemaVersion},
            {"command", command},
            {"instance", p.name},
            {"settings", {{"checks", to_json(p.checks)}, {"solver", to_json(p.picard)}}}};
}

void print_settings(std::ostream& out, const Problem& p) {
    const CheckSettings& c = p.checks;
    out << "instance: " << p.name << "\n"
        << "settings: seed=" << c.seed << " n_samples=" << c.n_samples << " tol=" << format_double(c.tol)
        << " tol_eq=" << format_double(c.tol_eq) << " tol_ord=" << format_double(c.tol_ord)
        << " grid_size=" << c.grid_size << " n_int=" << c.n_int << " u_max=" << format_double(c.range())
        << " tol_fix=" << format_double(p.picard.tol_fix) << " max_iter=" << p.picard.max_iter << "\n";
}

std::string join_doubles(const std::vector<double>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ", ";
        s += format_double(vs[i]);
    }
    return s;
}

void print_condition(std::ostream& out, const std::string& label, const ConditionReport& r) {
    out << label << ": " << to_string(r.verdict) << " (margin " << format_double(r.margin) << ", "
        << r.violations << " violations in " << r.samples_used << " samples)\n";
    if (r.passed()) return;
    const std::size_t shown = std::min<std::size_t>(r.witnesses.size(), 3);
    for (std::size_t i = 0; i < shown; ++i) {
        const Witness& w = r.witnesses[i];
        out << "  witness [" << w.clause << "] inputs (" << join_doubles(w.inputs) << ") values ("
            << join_doubles(w.values) << ") margin " << format_double(w.margin) << "\n";
    }
    if (r.witnesses.size() > shown) out << "  ... " << r.witnesses.size() - shown << " more\n";
}

void print_contraction_witness(std::ostream& out, const ContractionWitness& w) {
    out << "  witness x=" << format_double(w.x.value) << " y=" << format_double(w.y.value)
        << " d(x,y)=" << format_double(w.d_xy) << " Tx=" << format_double(w.tx) << " Ty=" << format_double(w.ty)
        << " d(Tx,Ty)=" << format_double(w.d_txty) << " psi=" << format_double(w.psi)
        << " phi=" << format_double(w.phi) << " margin=" << format_double(w.margin) << "\n";
}

void print_closure(std::ostream& out, const ClosureReport& r) {
    out << "closure: " << (r.ok() ? "ok" : "violated") << " (" << r.violations << " violations in " << r.checked
        << " points)\n";
    for (const auto& w : r.witnesses) {
        out << "  x=" << format_double(w.x.value) << " Tx=" << format_double(w.image) << " " << w.reason << "\n";
    }
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

int cmd_check_pair(const GlobalOptions& g, std::ostream& out) {
    const Problem p = load_problem(g);
    const ShiftingPair& pair = need_pair(p);
    const CheckSettings& c = p.checks;
    const auto ci = check_condition_i(pair, derive_seed(c.seed, "pipeline/condition_i"), c.n_samples, c.tol_eq,
                                      c.tol_ord, c.range());
    const auto cii = check_condition_ii(pair, condition_ii_grid(pair, c.range(), c.grid_size), c.tol);
    const int code = ci.passed() && cii.passed() ? kOk : kCheckFailed;
    if (g.json_mode) {
        json doc = envelope("check-pair", p);
        doc["condition_i"] = to_json(ci);
        doc["condition_ii"] = to_json(cii);
        doc["exit_code"] = code;
        emit(out, doc);
    } else {
        print_settings(out, p);
        print_condition(out, "condition (i)", ci);
        print_condition(out, "condition (ii)", cii);
    }
    return code;
}

int cmd_check_contraction(const GlobalOptions& g, std::ostream& out) {
    const Problem p = load_problem(g);
    const MetricSpace& space = need_space(p);
    const SelfMap& map = need_map(p);
    const ShiftingPair& pair = need_pair(p);
    const CheckSettings& c = p.checks;

    const auto closure = verify_closure(space, map, c.seed, c.closure_samples);
    std::optional<ContractionReport> sampled, searched;
    if (closure.ok()) {
        sampled = check_contraction(space, map, pair, derive_seed(c.seed, "pipeline/contraction"), c.n_samples, c.tol);
        searched = search_counterexample(space, map, pair, derive_seed(c.seed, "cli/search"), c.search_budget, c.tol);
    }
    const bool holds = closure.ok() && sampled->verdict == Verdict::Pass && searched->verdict == Verdict::Pass;
    const int code = holds ? kOk : kCheckFailed;

    std::optional<ContractionWitness> worst;
    double worst_margin = 0.0;
    if (sampled) {
        const ContractionReport& w = searched->worst_margin < sampled->worst_margin ? *searched : *sampled;
        worst = w.witness;
        worst_margin = w.worst_margin;
    }

    if (g.json_mode) {
        json doc = envelope("check-contraction", p);
        doc["closure"] = to_json(closure);
        doc["sampled"] = sampled ? to_json(*sampled) : json(nullptr);
        doc["search"] = searched ? to_json(*searched) : json(nullptr);
        doc["verdict"] = holds ? "pass" : "violated";
        doc["worst_margin"] = sampled ? json(worst_margin) : json(nullptr);
        doc["witness"] = worst ? to_json(*worst) : json(nullptr);
        doc["exit_code"] = code;
        emit(out, doc);
    } else {
        print_settings(out, p);
        print_closure(out, closure);
        if (sampled) {
            out << "sampled check: " << to_string(sampled->verdict) << " over " << sampled->samples_used
                << " pairs, worst margin " << format_double(sampled->worst_margin) << "\n";
            out << "counterexample search: " << to_string(searched->verdict) << " over " << searched->samples_used
                << " evaluations, worst margin " << format_double(searched->worst_margin) << "\n";
            out << "contraction: " << (holds ? "holds" : "violated") << ", worst margin "
                << format_double(worst_margin) << "\n";
            if (worst) print_contraction_witness(out, *worst);
        }
    }
    return code;
}

struct SolveFlags {
    std::string x0;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::string trace_out;
};

int cmd_solve(const GlobalOptions& g, const SolveFlags& f, std::ostream& out) {
    Problem p = load_problem(g);
    const MetricSpace& space = need_space(p);
    const SelfMap& map = need_map(p);
    if (f.tol) {
        if (!(*f.tol > 0.0)) throw UsageError("--tol must be positive");
        p.picard.tol_fix = *f.tol;
    }
    if (f.max_iter) p.picard.max_iter = *f.max_iter;
    Point x0 = p.x0.value_or(space.anchor_points().front());
    if (!f.x0.empty()) {
        try {
            x0 = Point{parse_constant(f.x0)};
        } catch (const ParseError& e) {
            throw UsageError(std::string("--x0: ") + e.what());
        }
    }
    if (!space.contains(x0.value)) {
        throw UsageError("x0 = " + format_double(x0.value) + " is not a member of " + space.description());
    }

    const IterationTrace trace = picard(space, map, x0, p.picard);
    if (!f.trace_out.empty()) {
        std::ofstream file(f.trace_out);
        if (!file) throw UsageError("cannot open trace output '" + f.trace_out + "'");
        write_trace_csv(file, trace);
    }
    const int code = trace.verdict == IterationVerdict::Converged ? kOk : kCheckFailed;
    if (g.json_mode) {
        json doc = envelope("solve", p);
        doc["x0"] = x0.value;
        doc["solve"] = trace_summary(trace);
        doc["exit_code"] = code;
        emit(out, doc);
    } else {
        print_settings(out, p);
        out << "x0: " << format_double(x0.value) << "\n"
            << "verdict: " << to_string(trace.verdict) << "\n"
            << "fixed point: " << format_double(trace.last().value) << "\n"
            << "residual: " << format_double(trace.residual) << "\n"
            << "iterations: " << trace.iterations() << "\n";
        if (trace.monotone_violations > 0) out << "monotone violations: " << trace.monotone_violations << "\n";
    }
    return code;
}

int cmd_probe_uniqueness(const GlobalOptions& g, std::optional<std::size_t> starts, std::ostream& out) {
    Problem p = load_problem(g);
    if (starts) p.checks.starts = *starts;
    if (p.checks.starts < 2) throw UsageError("--starts must be at least 2");
    const MetricSpace& space = need_space(p);
    const SelfMap& map = need_map(p);
    const auto r = probe_uniqueness(space, map, derive_seed(p.checks.seed, "pipeline/uniqueness"), p.checks.starts,
                                    p.picard, p.checks.tol_unique);
    const int code = r.verdict == UniquenessVerdict::Unique ? kOk : kCheckFailed;
    if (g.json_mode) {
        json doc = envelope("probe-uniqueness", p);
        doc["uniqueness"] = to_json(r);
        doc["exit_code"] = code;
        emit(out, doc);
    } else {
        print_settings(out, p);
        out << "verdict: " << to_string(r.verdict) << "\n"
            << "max pairwise distance: " << format_double(r.max_pairwise_distance) << "\n";
        for (std::size_t i = 0; i < r.starts.size(); ++i) {
            out << "  start " << format_double(r.starts[i].value) << " -> " << format_double(r.limits[i].value)
                << " (" << to_string(r.run_verdicts[i]) << ")\n";
        }
        if (!r.failed_runs.empty()) out << "runs without convergence: " << r.failed_runs.size() << "\n";
    }
    return code;
}

json expectation_json(const Expectation& e) {
    return {{"fixed_point", e.fixed_point ? json(*e.fixed_point) : json(nullptr)},
            {"contraction_holds", e.contraction_holds},
            {"pair_conditions_hold", e.pair_conditions_hold}};
}

int cmd_corpus(const GlobalOptions& g, const std::string& action, const std::string& name, std::ostream& out) {
    if (action == "list") {
        if (g.json_mode) {
            json list = json::array();
            for (const auto& n : list_instances()) {
                const Instance inst = instance(n);
                list.push_back({{"name", inst.name},
                                {"description", inst.description},
                                {"expected", expectation_json(inst.expected)}});
            }
            emit(out, {{"schema_version", kSchemaVersion}, {"command", "corpus list"}, {"instances", list}});
        } else {
            for (const auto& n : list_instances()) out << n << "  " << instance(n).description << "\n";
        }
        return kOk;
    }

    GlobalOptions src = g;
    if (!name.empty()) src.instance_name = name;
    if (action == "export") {
        if (name.empty()) throw UsageError("corpus export needs an instance name");
        Problem p = load_problem(src);
        Instance inst = instance(name);
        emit(out, export_config(inst, p.checks));
        return kOk;
    }

    // action == "run"
    Problem p = load_problem(src);
    if (!p.expected) throw ConfigError("expected", "corpus run needs an expectation section");
    Instance inst{p.name,
                  "",
                  p.space,
                  need_map(p),
                  need_pair(p),
                  *p.expected,
                  p.x0.value_or(need_space(p).anchor_points().front())};
    const PipelineResult r = run_pipeline(inst, p.checks, p.picard);
    const int code = r.all_met() ? kOk : kCheckFailed;
    if (g.json_mode) {
        json doc = envelope("corpus run", p);
        doc["expected"] = expectation_json(*p.expected);
        doc["result"] = to_json(r);
        doc["exit_code"] = code;
        emit(out, doc);
    } else {
        print_settings(out, p);
        print_closure(out, r.closure);
        if (r.closure.ok()) {
            print_condition(out, "condition (i)", r.condition_i);
            print_condition(out, "condition (ii)", r.condition_ii);
            out << "contraction: " << to_string(r.contraction.verdict) << ", worst margin "
                << format_double(r.contraction.worst_margin) << "\n";
            if (r.contraction.witness && r.contraction.verdict != Verdict::Pass) {
                print_contraction_witness(out, *r.contraction.witness);
            }
            out << "solve: " << to_string(r.trace.verdict) << " at " << format_double(r.trace.last().value)
                << " after " << r.trace.iterations() << " iterations\n"
                << "uniqueness: " << to_string(r.uniqueness.verdict) << "\n";
        }
        out << "expectations:\n";
        for (const auto& c : r.checks) {
            out << "  " << (c.met ? "met    " : "NOT MET") << " " << c.name << ": " << c.detail << "\n";
        }
    }
    return code;
}

void report_error(const GlobalOptions& g, std::ostream& out, std::ostream& err, const std::string& kind,
                  const std::string& message) {
    err << "error: " << message << "\n";
    if (g.json_mode) {
        emit(out, {{"schema_version", kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}});
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fixed-point solver and shifting distance pair verifier", "shiftfp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    GlobalOptions g;
    std::uint64_t seed_value = 0;
    app.add_option("--config", g.config_path, "Config file (JSON)");
    app.add_option("--instance", g.instance_name, "Built-in corpus instance instead of a config file");
    app.add_flag("--json", g.json_mode, "Emit a single JSON document");
    auto* seed_opt = app.add_option("--seed", seed_value, "Root seed (overrides the config)");

    auto* check_pair = app.add_subcommand("check-pair", "Check both shifting distance pair conditions");
    auto* check_contraction_cmd =
        app.add_subcommand("check-contraction", "Check closure and the contraction inequality, then search for a "
                                                "counterexample");

    SolveFlags solve_flags;
    auto* solve = app.add_subcommand("solve", "Run Picard iteration");
    solve->add_option("--x0", solve_flags.x0, "Starting point (number or constant such as 3/125)");
    solve->add_option("--tol", solve_flags.tol, "Residual tolerance");
    solve->add_option("--max-iter", solve_flags.max_iter, "Maximum number of map applications");
    solve->add_option("--trace-out", solve_flags.trace_out, "Write the iterates as CSV");

    std::optional<std::size_t> starts;
    auto* probe = app.add_subcommand("probe-uniqueness", "Iterate from several starts and compare the limits");
    probe->add_option("--starts", starts, "Number of starting points (at least 2)");

    std::string corpus_action, corpus_name;
    auto* corpus = app.add_subcommand("corpus", "List, run or export built-in instances");
    corpus->add_option("action", corpus_action, "list | run | export")
        ->required()
        ->check(CLI::IsMember({"list", "run", "export"}));
    corpus->add_option("name", corpus_name, "Instance name");

    // CLI11 wants argv order reversed when given a vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }
    if (seed_opt->count() > 0) g.seed = seed_value;

    try {
        if (check_pair->parsed()) return cmd_check_pair(g, out);
        if (check_contraction_cmd->parsed()) return cmd_check_contraction(g, out);
        if (solve->parsed()) return cmd_solve(g, solve_flags, out);
        if (probe->parsed()) return cmd_probe_uniqueness(g, starts, out);
        if (corpus->parsed()) return cmd_corpus(g, corpus_action, corpus_name, out);
    } catch (const UsageError& e) {
        report_error(g, out, err, "usage", e.what());
        return kUsage;
    } catch (const ConfigError& e) {
        report_error(g, out, err, "config", e.what());
        return kUsage;
    } catch (const ParseError& e) {
        report_error(g, out, err, "config", e.what());
        return kUsage;
    } catch (const MembershipError& e) {
        report_error(g, out, err, "usage", e.what());
        return kUsage;
    } catch (const std::out_of_range& e) {
        report_error(g, out, err, "usage", e.what());
        return kUsage;
    } catch (const std::invalid_argument& e) {
        report_error(g, out, err, "usage", e.what());
        return kUsage;
    } catch (const ClosureError& e) {
        report_error(g, out, err, "math", e.what());
        return kCheckFailed;
    } catch (const DomainError& e) {
        report_error(g, out, err, "math", e.what());
        return kCheckFailed;
    } catch (const std::exception& e) {
        report_error(g, out, err, "internal", e.what());
        return kCheckFailed;
    }
    return kUsage;
}

}  // namespace shiftfp::cli
