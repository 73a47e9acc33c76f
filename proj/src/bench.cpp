#include "causal/bench.hpp"

#include <atomic>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "causal/rng.hpp"

namespace causal {

namespace {

NodeSet sem_variables() { return NodeSet({"X1", "X2", "X3", "X4"}); }

// Linear-Gaussian SEM with a fixed topological order; used for randomLinear.
struct LinearSem {
    Dag graph;
    std::vector<std::vector<std::pair<int, double>>> parents_with_coef;  // per node
    std::vector<int> topo_order;
};

LinearSem random_linear_sem(const SemSpec& spec) {
    if (spec.node_count < 2 || spec.node_count > kSubsetGuardNodes)
        throw std::invalid_argument("node count out of range");
    Rng rng(Rng::mix(spec.structure_seed, 0x5ee0));
    const int n = spec.node_count;

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);

    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<std::pair<int, double>>> coefs(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (rng.uniform01() >= spec.edge_prob) continue;
            const int tail = order[static_cast<std::size_t>(a)];
            const int head = order[static_cast<std::size_t>(b)];
            edges.emplace_back(tail, head);
            const double magnitude =
                spec.coef_min + (spec.coef_max - spec.coef_min) * rng.uniform01();
            const double coef = rng.bernoulli_bit() != 0 ? magnitude : -magnitude;
            coefs[static_cast<std::size_t>(head)].emplace_back(tail, coef);
        }
    }
    return LinearSem{Dag(numbered_nodes(n), std::move(edges)), std::move(coefs),
                     std::move(order)};
}

Dataset sample_linear(const LinearSem& sem, long n, std::uint64_t seed) {
    Rng rng(seed);
    const int p = sem.graph.node_count();
    Eigen::MatrixXd values(n, p);
    std::vector<double> row(static_cast<std::size_t>(p));
    for (long r = 0; r < n; ++r) {
        for (int v : sem.topo_order) {
            double x = rng.normal();
            for (auto [parent, coef] : sem.parents_with_coef[static_cast<std::size_t>(v)])
                x += coef * row[static_cast<std::size_t>(parent)];
            row[static_cast<std::size_t>(v)] = x;
        }
        for (int c = 0; c < p; ++c) values(r, c) = row[static_cast<std::size_t>(c)];
    }
    return Dataset(sem.graph.nodes(), std::move(values));
}

}  // namespace

const char* sem_kind_name(SemSpec::Kind kind) {
    switch (kind) {
        case SemSpec::Kind::Sem1: return "sem1";
        case SemSpec::Kind::Sem2: return "sem2";
        case SemSpec::Kind::RandomLinear: return "random-linear";
    }
    return "?";
}

Dataset sample_sem2(long n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample count must be positive");
    Rng rng(seed);
    Eigen::MatrixXd values(n, 4);
    for (long r = 0; r < n; ++r) {
        const double x1 = rng.normal();
        const double x2 = rng.normal();
        const double x3 = -6.0 * x1 + 2.0 * x2 + rng.normal();
        const double x4 = 3.0 * x1 + 4.0 * x2 + rng.normal();
        values(r, 0) = x1;
        values(r, 1) = x2;
        values(r, 2) = x3;
        values(r, 3) = x4;
    }
    return Dataset(sem_variables(), std::move(values));
}

Dataset sample_sem1(long n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample count must be positive");
    Rng rng(seed);
    NodeSet columns({"X1_1", "X1_2", "X1_3", "X2_1", "X2_2", "X2_3", "X3_1", "X3_2", "X3_3",
                     "X4_1", "X4_2", "X4_3", "X4_4"});
    Eigen::MatrixXd values(n, 13);
    for (long r = 0; r < n; ++r) {
        // Draw order: phi1..phi5 then eps1..eps4.
        double phi[5];
        double eps[4];
        for (double& v : phi) v = static_cast<double>(rng.bernoulli_bit());
        for (double& v : eps) v = static_cast<double>(rng.bernoulli_bit());
        values(r, 0) = phi[0];
        values(r, 1) = phi[1];
        values(r, 2) = eps[0];
        values(r, 3) = phi[0];  // first component copied from X1
        values(r, 4) = phi[2];
        values(r, 5) = eps[1];
        values(r, 6) = phi[3];
        values(r, 7) = phi[4];
        values(r, 8) = eps[2];
        values(r, 9) = phi[0] + phi[3];
        values(r, 10) = phi[0] + phi[4];
        values(r, 11) = phi[2];  // second component of X2
        values(r, 12) = eps[3];
    }
    Dataset data(std::move(columns), std::move(values));
    data.set_groups(ColumnGroups{sem_variables(),
                                 {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11, 12}}});
    return data;
}

Dag sem2_truth() {
    const NodeSet v = sem_variables();
    return Dag(v, {{0, 2}, {1, 2}, {0, 3}, {1, 3}});
}

Dag sem1_truth() {
    const NodeSet v = sem_variables();
    return Dag(v, {{0, 1}, {0, 3}, {1, 3}, {2, 3}});
}

CiTable sem2_reference_table() {
    CiTable t(sem_variables());
    t.add(0, 1, 0);                        // X1 _||_ X2
    t.add(0, 1, mask_bit(2) | mask_bit(3));  // X1 _||_ X2 | {X3,X4}
    t.add(2, 3, mask_bit(0) | mask_bit(1));  // X3 _||_ X4 | {X1,X2}
    return t;
}

CiTable sem1_reference_table() {
    CiTable t(sem_variables());
    t.add(1, 2, 0);                        // X2 _||_ X3
    t.add(0, 2, 0);                        // X1 _||_ X3
    t.add(1, 2, mask_bit(0) | mask_bit(3));  // X2 _||_ X3 | {X1,X4}
    t.add(1, 2, mask_bit(0));              // X2 _||_ X3 | X1
    t.add(0, 2, mask_bit(1));              // X1 _||_ X3 | X2
    return t;
}

std::pair<Dag, std::shared_ptr<CiOracle>> random_faithful_instance(int n_nodes, double edge_prob,
                                                                   std::uint64_t seed) {
    if (n_nodes < 2 || n_nodes > 8) throw std::invalid_argument("node count out of range");
    SemSpec spec;
    spec.kind = SemSpec::Kind::RandomLinear;
    spec.node_count = n_nodes;
    spec.edge_prob = edge_prob;
    spec.structure_seed = seed;
    LinearSem sem = random_linear_sem(spec);
    auto oracle = std::make_shared<DsepOracle>(sem.graph);
    return {std::move(sem.graph), std::move(oracle)};
}

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Vcs: return "vcs";
        case Algorithm::PcClassic: return "pc";
        case Algorithm::PcConservative: return "cpc";
        case Algorithm::SpBrute: return "sp";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "vcs") return Algorithm::Vcs;
    if (name == "pc") return Algorithm::PcClassic;
    if (name == "cpc") return Algorithm::PcConservative;
    if (name == "sp") return Algorithm::SpBrute;
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

struct AlgorithmOutcome {
    std::string status;
    bool consistent = false;
    std::uint64_t queries = 0;
};

AlgorithmOutcome run_algorithm(Algorithm algorithm, const CiOracle& oracle, const Dag& truth) {
    const Pattern truth_pattern = dag_to_pattern(truth);
    CachedOracle cache(oracle);
    AlgorithmOutcome out;
    try {
        switch (algorithm) {
            case Algorithm::Vcs: {
                DiscoveryResult r = discover(cache);
                out.status = discovery_status_name(r.status);
                out.consistent = r.status == DiscoveryStatus::Success &&
                                 dag_to_pattern(r.solution->dag) == truth_pattern;
                break;
            }
            case Algorithm::PcClassic: {
                PcResult r = pc_classic(cache);
                out.status = "done";
                out.consistent = Pattern{r.skeleton, r.colliders} == truth_pattern;
                break;
            }
            case Algorithm::PcConservative: {
                PcResult r = pc_conservative(cache);
                out.status = r.ambiguous.empty() ? "definite" : "ambiguous";
                out.consistent = r.ambiguous.empty() &&
                                 Pattern{r.skeleton, r.colliders} == truth_pattern;
                break;
            }
            case Algorithm::SpBrute: {
                SpResult r = sp_bruteforce(cache);
                out.status = r.smr_holds ? "smr-holds" : "smr-fails";
                out.consistent =
                    r.smr_holds &&
                    dag_to_pattern(r.sparsest.front().dag) == truth_pattern;
                break;
            }
        }
    } catch (const degenerate_covariance&) {
        out.status = "degenerate-covariance";
    } catch (const guard_error& e) {
        out.status = std::string("guard: ") + e.what();
    }
    out.queries = cache.misses();
    return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    if (config.replications < 1) throw std::invalid_argument("need at least one replication");
    if (config.algorithms.empty()) throw std::invalid_argument("no algorithms selected");

    Dag truth = [&] {
        switch (config.sem.kind) {
            case SemSpec::Kind::Sem1: return sem1_truth();
            case SemSpec::Kind::Sem2: return sem2_truth();
            case SemSpec::Kind::RandomLinear: return random_linear_sem(config.sem).graph;
        }
        throw std::invalid_argument("bad sem kind");
    }();

    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report{config, truth, {}, {}, 0.0};
    report.rows.resize(static_cast<std::size_t>(config.replications) * config.algorithms.size());

    auto run_replication = [&](int rep) {
        const std::uint64_t rep_seed = Rng::mix(config.master_seed, static_cast<std::uint64_t>(rep));
        std::shared_ptr<const CiOracle> oracle;
        std::string data_failure;
        if (config.mode == ExperimentMode::OracleExact) {
            switch (config.sem.kind) {
                case SemSpec::Kind::Sem1:
                    oracle = std::make_shared<TableOracle>(sem1_reference_table());
                    break;
                case SemSpec::Kind::Sem2:
                    oracle = std::make_shared<TableOracle>(sem2_reference_table());
                    break;
                case SemSpec::Kind::RandomLinear:
                    oracle = std::make_shared<DsepOracle>(truth);
                    break;
            }
        } else {
            try {
                Dataset data = [&] {
                    switch (config.sem.kind) {
                        case SemSpec::Kind::Sem1: return sample_sem1(config.samples, rep_seed);
                        case SemSpec::Kind::Sem2: return sample_sem2(config.samples, rep_seed);
                        case SemSpec::Kind::RandomLinear:
                            return sample_linear(random_linear_sem(config.sem), config.samples,
                                                 rep_seed);
                    }
                    throw std::invalid_argument("bad sem kind");
                }();
                oracle = std::make_shared<FisherZOracle>(std::move(data), config.alpha);
            } catch (const std::exception& e) {
                data_failure = e.what();
            }
        }

        for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
            ReplicationRow row;
            row.replication = rep;
            row.seed = rep_seed;
            row.algorithm = config.algorithms[a];
            const auto start = std::chrono::steady_clock::now();
            if (oracle) {
                AlgorithmOutcome outcome = run_algorithm(row.algorithm, *oracle, truth);
                row.status = std::move(outcome.status);
                row.consistent = outcome.consistent;
                row.queries = outcome.queries;
            } else {
                row.status = "data: " + data_failure;
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
            report.rows[static_cast<std::size_t>(rep) * config.algorithms.size() + a] = row;
        }
    };

    const int workers = std::max(1, config.workers);
    if (workers == 1) {
        for (int rep = 0; rep < config.replications; ++rep) run_replication(rep);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int rep = next.fetch_add(1); rep < config.replications;
                     rep = next.fetch_add(1))
                    run_replication(rep);
            });
        for (auto& t : pool) t.join();
    }

    for (Algorithm a : config.algorithms) {
        int consistent = 0;
        for (const ReplicationRow& row : report.rows)
            if (row.algorithm == a && row.consistent) ++consistent;
        report.consistency_percent[a] =
            100.0 * static_cast<double>(consistent) / static_cast<double>(config.replications);
    }
    report.total_wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace causal
