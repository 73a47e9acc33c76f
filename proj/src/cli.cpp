#include "causal/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "causal/io.hpp"

namespace causal {

namespace {

constexpr const char* kToolVersion = "0.1.0";

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success (mec-eq: equivalent), 1 failure (mec-eq: not equivalent),\n"
    "2 infeasible, 3 ambiguous MEC, 4 parse/usage error, 5 guard exceeded.";

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

// Options shared by the distribution-consuming commands.
struct SourceOptions {
    std::string ci_table_path;
    std::string data_path;
    std::vector<std::string> dag_paths;
    std::vector<std::string> extra_ci;
    double alpha = 0.05;
    std::string mode;  // "", "oracle", "data"
};

struct OutputOptions {
    std::string out_path;
    std::string format = "json";
};

void add_source_flags(CLI::App* cmd, SourceOptions& src) {
    cmd->add_option("--ci-table", src.ci_table_path, "CI-table input (oracle mode)");
    cmd->add_option("--data", src.data_path, "CSV dataset input (data mode)");
    cmd->add_option("--dag", src.dag_paths,
                    "DAG input; with --ci-table/--data it is the reference graph")
        ->expected(0, 1);
    cmd->add_option("--extra-ci", src.extra_ci,
                    "extra independence statement, CI-table line grammar (repeatable)");
    cmd->add_option("--alpha", src.alpha, "Fisher-z significance level")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--mode", src.mode, "force oracle|data interpretation")
        ->check(CLI::IsMember({"oracle", "data"}));
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--out", out.out_path, "report path (default: stdout)");
    cmd->add_option("--format", out.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A usage error that should exit with kParseError.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Source {
    std::shared_ptr<CiOracle> oracle;
    std::optional<Dag> reference;  // --dag (also the closure source in dag mode)
    nlohmann::json description;
};

Source resolve_source(const SourceOptions& src) {
    const int sources = (src.ci_table_path.empty() ? 0 : 1) + (src.data_path.empty() ? 0 : 1) +
                        (src.dag_paths.empty() ? 0 : 1);
    if (sources == 0) throw usage_error("no input given (--ci-table, --data or --dag)");

    // Extension / --mode cross-checks: never guess on a contradiction.
    if (!src.ci_table_path.empty() && has_suffix(src.ci_table_path, ".csv") && src.mode != "oracle")
        throw usage_error("--ci-table with a .csv file: pass --mode oracle to confirm");
    if (!src.data_path.empty() &&
        (has_suffix(src.data_path, ".citab") || has_suffix(src.data_path, ".dag")) &&
        src.mode != "data")
        throw usage_error("--data with an oracle-format file: pass --mode data to confirm");
    if (src.mode == "data" && src.data_path.empty())
        throw usage_error("--mode data requires --data");
    if (src.mode == "oracle" && !src.data_path.empty())
        throw usage_error("--mode oracle conflicts with --data");

    Source out;
    if (!src.dag_paths.empty()) {
        if (src.dag_paths.size() > 1) throw usage_error("at most one --dag here");
        out.reference = read_dag_file(src.dag_paths.front());
        out.description["dag"] = src.dag_paths.front();
    }

    if (!src.ci_table_path.empty() && !src.data_path.empty())
        throw usage_error("--ci-table and --data are mutually exclusive");

    if (!src.ci_table_path.empty()) {
        CiTable table = read_ci_table_file(src.ci_table_path);
        for (const std::string& stmt : src.extra_ci) table.add(parse_ci_statement(stmt, table.nodes()));
        out.oracle = std::make_shared<TableOracle>(std::move(table));
        out.description["ci_table"] = src.ci_table_path;
    } else if (!src.data_path.empty()) {
        if (!src.extra_ci.empty()) throw usage_error("--extra-ci requires an oracle-mode input");
        Dataset data = read_csv_dataset_file(src.data_path);
        out.oracle = std::make_shared<FisherZOracle>(std::move(data), src.alpha);
        out.description["data"] = src.data_path;
        out.description["alpha"] = src.alpha;
    } else {
        // DAG as the distribution: its full d-separation relation plus extras.
        std::vector<CiQuery> extra;
        for (const std::string& stmt : src.extra_ci)
            extra.push_back(parse_ci_statement(stmt, out.reference->nodes()));
        out.oracle = std::make_shared<TableOracle>(markov_closure_table(*out.reference, extra));
        if (!src.extra_ci.empty()) out.description["extra_ci"] = src.extra_ci;
    }
    if (!src.extra_ci.empty() && !src.ci_table_path.empty())
        out.description["extra_ci"] = src.extra_ci;
    return out;
}

void emit(const OutputOptions& out, const nlohmann::json& report) {
    if (out.out_path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream file(out.out_path);
    if (!file) throw std::runtime_error("cannot write " + out.out_path);
    file << report.dump(2) << "\n";
}

void emit_text(const OutputOptions& out, const std::string& text) {
    if (out.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out.out_path);
    if (!file) throw std::runtime_error("cannot write " + out.out_path);
    file << text;
}

nlohmann::json make_header(const std::string& command, const nlohmann::json& input) {
    return {{"tool", "causal"},
            {"version", kToolVersion},
            {"command", command},
            {"input", input},
            // Volatile field; strip it (and header.timing) when diffing runs.
            {"generated_at", timestamp_utc()}};
}

int status_exit_code(DiscoveryStatus status) {
    switch (status) {
        case DiscoveryStatus::Success: return exit_code::kSuccess;
        case DiscoveryStatus::Infeasible: return exit_code::kInfeasible;
        case DiscoveryStatus::AmbiguousMec: return exit_code::kAmbiguousMec;
    }
    return exit_code::kFailure;
}

nlohmann::json sepsets_to_json(const SepsetIndex& index, const NodeSet& nodes) {
    nlohmann::json out;
    for (const auto& [pair, sets] : index.all()) {
        nlohmann::json lists = nlohmann::json::array();
        for (NodeMask c : sets) lists.push_back(nodes.labels_of(c));
        out[nodes.label(pair.first) + "," + nodes.label(pair.second)] = std::move(lists);
    }
    return out;
}

int cmd_skeleton(const SourceOptions& src, const OutputOptions& out) {
    Source source = resolve_source(src);
    CachedOracle cache(*source.oracle);
    SkeletonDiscovery sk = build_skeleton(cache);
    nlohmann::json report{{"header", make_header("skeleton", source.description)},
                          {"skeleton", skeleton_to_json(sk.skeleton)},
                          {"sepsets", sepsets_to_json(sk.sepsets, sk.skeleton.nodes())},
                          {"oracle", {{"evaluations", cache.misses()}, {"hits", cache.hits()}}}};
    emit(out, report);
    return exit_code::kSuccess;
}

int cmd_orient(const SourceOptions& src, const OutputOptions& out) {
    Source source = resolve_source(src);
    CachedOracle cache(*source.oracle);
    SkeletonDiscovery sk = build_skeleton(cache);
    auto assignments = orient_vconfigs(sk.skeleton, sk.sepsets, cache);
    nlohmann::json report{{"header", make_header("orient", source.description)},
                          {"skeleton", skeleton_to_json(sk.skeleton)},
                          {"vconfigs", assignments_to_json(assignments, sk.skeleton.nodes())},
                          {"oracle", {{"evaluations", cache.misses()}, {"hits", cache.hits()}}}};
    emit(out, report);
    return exit_code::kSuccess;
}

int cmd_discover(const SourceOptions& src, const OutputOptions& out, bool check_unique,
                 bool dump_model) {
    Source source = resolve_source(src);
    DiscoverOptions options;
    options.check_unique = check_unique;
    DiscoveryResult result = discover(*source.oracle, options);
    nlohmann::json report = discovery_to_json(result);
    report["header"] = make_header("discover", source.description);
    if (dump_model)
        report["model_dimacs"] =
            model_to_dimacs(build_model(result.skeleton, result.assignments));
    emit(out, report);
    return status_exit_code(result.status);
}

int cmd_pc(const SourceOptions& src, const OutputOptions& out, bool conservative) {
    Source source = resolve_source(src);
    PcResult result =
        conservative ? pc_conservative(*source.oracle) : pc_classic(*source.oracle);
    nlohmann::json report = pc_to_json(result);
    report["header"] =
        make_header(conservative ? "pc --conservative" : "pc", source.description);
    emit(out, report);
    return exit_code::kSuccess;
}

int cmd_sp(const SourceOptions& src, const OutputOptions& out) {
    Source source = resolve_source(src);
    SpResult result = sp_bruteforce(*source.oracle);
    nlohmann::json report = sp_to_json(result);
    report["header"] = make_header("sp", source.description);
    emit(out, report);
    return exit_code::kSuccess;
}

struct CheckFlags {
    bool vous = false;
    bool collider_stable = false;
    bool v_stability = false;
    bool modified_v_stability = false;
    bool adjacency_faithful = false;
};

nlohmann::json check_result_json(const CheckResult& r, const NodeSet& nodes) {
    nlohmann::json out{{"holds", r.holds}};
    if (!r.holds && r.vconfig) {
        nlohmann::json cx{{"vconfig", render_vconfig(*r.vconfig, nodes)}};
        if (r.cond) cx["cond"] = nodes.labels_of(*r.cond);
        out["counterexample"] = std::move(cx);
    }
    return out;
}

int cmd_check(const SourceOptions& src, const OutputOptions& out, const CheckFlags& flags) {
    if (!(flags.vous || flags.collider_stable || flags.v_stability ||
          flags.modified_v_stability || flags.adjacency_faithful))
        throw usage_error("select at least one check");
    Source source = resolve_source(src);
    const NodeSet& nodes = source.oracle->nodes();

    const bool needs_graph = flags.vous || flags.collider_stable || flags.adjacency_faithful;
    if (needs_graph && !source.reference)
        throw usage_error("this check needs a graph; pass --dag");
    if (source.reference && !(source.reference->nodes() == nodes))
        throw usage_error("graph and distribution use different node universes");

    nlohmann::json checks;
    if (flags.vous) checks["vous"] = check_result_json(check_vous(*source.oracle, *source.reference), nodes);
    if (flags.collider_stable)
        checks["collider_stable"] =
            check_result_json(check_collider_stable(*source.oracle, *source.reference), nodes);
    if (flags.v_stability) {
        SkeletonDiscovery sk = build_skeleton(*source.oracle);
        checks["v_stability"] = check_result_json(check_v_stable(*source.oracle, sk.skeleton), nodes);
    }
    if (flags.modified_v_stability) {
        ModVStabilityResult r = check_modified_v_stable(*source.oracle);
        const char* status = r.status == ModVStability::Stable     ? "stable"
                             : r.status == ModVStability::Unstable ? "unstable"
                                                                   : "no-solution";
        checks["modified_v_stability"] = {{"holds", r.status == ModVStability::Stable},
                                          {"status", status},
                                          {"solution_count", r.solution_count},
                                          {"distinct_patterns", r.distinct_patterns}};
    }
    if (flags.adjacency_faithful)
        checks["adjacency_faithful"] = {
            {"holds", check_adjacency_faithful(*source.oracle, *source.reference)}};

    nlohmann::json report{{"header", make_header("check", source.description)},
                          {"checks", std::move(checks)}};
    emit(out, report);
    return exit_code::kSuccess;
}

int cmd_mec_eq(const std::vector<std::string>& dag_paths, const OutputOptions& out) {
    if (dag_paths.size() != 2) throw usage_error("mec-eq needs exactly two --dag inputs");
    Dag a = read_dag_file(dag_paths[0]);
    Dag b = read_dag_file(dag_paths[1]);
    bool equivalent;
    try {
        equivalent = markov_equivalent(a, b);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    nlohmann::json report{
        {"header", make_header("mec-eq", {{"dags", dag_paths}})},
        {"equivalent", equivalent},
        {"patterns",
         {{"first", dag_to_json(a)}, {"second", dag_to_json(b)}}}};
    emit(out, report);
    return equivalent ? exit_code::kSuccess : exit_code::kFailure;
}

struct SimulateOptions {
    std::string sem;
    std::string mode;
    std::string algos = "vcs,cpc";
    int reps = 100;
    long samples = 10000;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    int workers = 1;
    int nodes = 4;
    double edge_prob = 0.4;
    std::uint64_t structure_seed = 1;
};

int cmd_simulate(const SimulateOptions& sim, const OutputOptions& out) {
    ExperimentConfig config;
    if (sim.sem == "sem1") config.sem.kind = SemSpec::Kind::Sem1;
    else if (sim.sem == "sem2") config.sem.kind = SemSpec::Kind::Sem2;
    else if (sim.sem == "random-linear") config.sem.kind = SemSpec::Kind::RandomLinear;
    else throw usage_error("unknown --sem: " + sim.sem);
    config.sem.node_count = sim.nodes;
    config.sem.edge_prob = sim.edge_prob;
    config.sem.structure_seed = sim.structure_seed;
    config.mode = sim.mode == "oracle" ? ExperimentMode::OracleExact : ExperimentMode::Data;
    std::istringstream algos(sim.algos);
    std::string name;
    while (std::getline(algos, name, ','))
        if (!name.empty()) config.algorithms.push_back(algorithm_from_name(name));
    config.replications = sim.reps;
    config.samples = sim.samples;
    config.alpha = sim.alpha;
    config.master_seed = sim.seed;
    config.workers = sim.workers;

    ExperimentReport report = run_experiment(config);
    if (out.format == "csv") {
        emit_text(out, experiment_to_csv(report));
    } else {
        nlohmann::json j = experiment_to_json(report);
        j["header"]["tool"] = "causal";
        j["header"]["version"] = kToolVersion;
        j["header"]["command"] = "simulate";
        j["header"]["generated_at"] = timestamp_utc();
        emit(out, j);
    }
    return exit_code::kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Constraint-based causal structure discovery: skeleton search, "
                 "v-configuration orientation, constrained acyclic-orientation solving, "
                 "PC/SP baselines and a simulation harness."};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    SourceOptions src;
    OutputOptions out;

    auto* skeleton = app.add_subcommand("skeleton", "Skeleton and all separating sets");
    add_source_flags(skeleton, src);
    add_output_flags(skeleton, out);

    auto* orient = app.add_subcommand("orient", "Skeleton plus v-configuration labels");
    add_source_flags(orient, src);
    add_output_flags(orient, out);

    bool check_unique = false;
    bool dump_model = false;
    auto* discover_cmd = app.add_subcommand("discover", "Full discovery pipeline");
    add_source_flags(discover_cmd, src);
    add_output_flags(discover_cmd, out);
    discover_cmd->add_flag("--check-unique", check_unique,
                           "enumerate all consistent DAGs and flag ambiguous MECs");
    discover_cmd->add_flag("--dump-model", dump_model,
                           "include the orientation constraints in DIMACS-like form");

    bool conservative = false;
    auto* pc = app.add_subcommand("pc", "PC baseline (classic sepset rule)");
    add_source_flags(pc, src);
    add_output_flags(pc, out);
    pc->add_flag("--conservative", conservative, "definite-collider rule over all sepsets");

    auto* sp = app.add_subcommand("sp", "Brute-force sparsest-permutation baseline");
    add_source_flags(sp, src);
    add_output_flags(sp, out);

    CheckFlags checks;
    auto* check = app.add_subcommand("check", "Consistency-condition checkers");
    add_source_flags(check, src);
    add_output_flags(check, out);
    check->add_flag("--vous", checks.vous, "V-OUS wrt the graph");
    check->add_flag("--collider-stable", checks.collider_stable,
                    "collider-stability wrt the graph");
    check->add_flag("--v-stability", checks.v_stability, "V-stability of the distribution");
    check->add_flag("--modified-v-stability", checks.modified_v_stability,
                    "all rule-consistent DAGs share one pattern");
    check->add_flag("--adjacency-faithful", checks.adjacency_faithful,
                    "discovered skeleton equals the graph's");

    auto* mec = app.add_subcommand("mec-eq", "Markov equivalence of two DAGs");
    std::vector<std::string> mec_dags;
    mec->add_option("--dag", mec_dags, "DAG file (give twice)")->expected(0, 2);
    add_output_flags(mec, out);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Replication harness");
    simulate->add_option("--sem", sim.sem, "benchmark: sem1|sem2|random-linear")->required();
    simulate->add_option("--mode", sim.mode, "oracle|data")
        ->required()
        ->check(CLI::IsMember({"oracle", "data"}));
    simulate->add_option("--algos", sim.algos, "comma list of vcs|pc|cpc|sp");
    simulate->add_option("--reps", sim.reps, "replications")->check(CLI::PositiveNumber);
    simulate->add_option("--samples", sim.samples, "samples per replication")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--alpha", sim.alpha, "Fisher-z significance level");
    simulate->add_option("--seed", sim.seed, "master seed");
    simulate->add_option("--workers", sim.workers, "parallel replication workers")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--nodes", sim.nodes, "random-linear node count");
    simulate->add_option("--edge-prob", sim.edge_prob, "random-linear edge probability");
    simulate->add_option("--structure-seed", sim.structure_seed, "random-linear graph seed");
    add_output_flags(simulate, out);

    std::vector<const char*> argv;
    argv.push_back("causal");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::kParseError;
    }

    try {
        if (skeleton->parsed()) return cmd_skeleton(src, out);
        if (orient->parsed()) return cmd_orient(src, out);
        if (discover_cmd->parsed()) return cmd_discover(src, out, check_unique, dump_model);
        if (pc->parsed()) return cmd_pc(src, out, conservative);
        if (sp->parsed()) return cmd_sp(src, out);
        if (check->parsed()) return cmd_check(src, out, checks);
        if (mec->parsed()) return cmd_mec_eq(mec_dags, out);
        if (simulate->parsed()) return cmd_simulate(sim, out);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::kParseError;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::kParseError;
    } catch (const guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::kGuardExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::kFailure;
    }
    return exit_code::kParseError;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace causal
