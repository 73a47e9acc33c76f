#ifndef CAUSAL_BENCH_HPP
#define CAUSAL_BENCH_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "causal/baselines.hpp"
#include "causal/discovery.hpp"
#include "causal/fisherz.hpp"

namespace causal {

struct SemSpec {
    enum class Kind { Sem1, Sem2, RandomLinear };
    Kind kind = Kind::Sem2;

    // randomLinear parameters; ignored for the fixed benchmarks.
    int node_count = 4;
    double edge_prob = 0.4;
    double coef_min = 0.5;
    double coef_max = 2.0;
    std::uint64_t structure_seed = 1;
};

const char* sem_kind_name(SemSpec::Kind kind);

// Linear-Gaussian benchmark over X1..X4: X3 = -6 X1 + 2 X2 + e3,
// X4 = 3 X1 + 4 X2 + e4, all noises standard normal.
Dataset sample_sem2(long n, std::uint64_t seed);

// Bit-tuple benchmark: variables are tuples of fair coin flips and sums of
// them, expanded to one column per component with a variable->columns group
// map attached.
Dataset sample_sem1(long n, std::uint64_t seed);

// Ground-truth graphs and the exact independence relations used in
// oracle-mode experiments.
Dag sem2_truth();
Dag sem1_truth();
CiTable sem2_reference_table();
CiTable sem1_reference_table();

// Random DAG (random topological order, independent edge coins) with its
// exact d-separation oracle.
std::pair<Dag, std::shared_ptr<CiOracle>> random_faithful_instance(int n_nodes, double edge_prob,
                                                                   std::uint64_t seed);

enum class Algorithm { Vcs, PcClassic, PcConservative, SpBrute };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

enum class ExperimentMode { OracleExact, Data };

struct ExperimentConfig {
    SemSpec sem;
    ExperimentMode mode = ExperimentMode::Data;
    std::vector<Algorithm> algorithms;
    int replications = 100;
    long samples = 10000;
    double alpha = 0.05;
    std::uint64_t master_seed = 1;
    int workers = 1;
};

struct ReplicationRow {
    int replication = 0;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::Vcs;
    std::string status;       // algorithm-specific outcome
    bool consistent = false;  // output pattern equals the ground truth's
    std::uint64_t queries = 0;
    double wall_ms = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    Dag truth;
    std::vector<ReplicationRow> rows;  // replication-major, algorithm order fixed
    std::map<Algorithm, double> consistency_percent;
    double total_wall_ms = 0.0;
};

// Runs each algorithm on every replication. Data mode draws a fresh dataset
// per replication (seed = mix(master, replication)); oracle mode reuses the
// exact reference relation, so verdicts are deterministic. Guard violations
// and degenerate statistics are recorded in the row status, never fatal.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace causal

#endif  // CAUSAL_BENCH_HPP
