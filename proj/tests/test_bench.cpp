#include "doctest.h"

#include <cmath>

#include "causal/bench.hpp"
#include "test_helpers.hpp"

using namespace causal;
using namespace causal::testing;

TEST_CASE("linear benchmark matches its analytic covariance") {
    const long n = 200000;
    const Dataset d = sample_sem2(n, 4);
    const Eigen::MatrixXd centered = d.values().rowwise() - d.values().colwise().mean();
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / double(n - 1);
    CHECK(cov(2, 2) == doctest::Approx(41.0).epsilon(0.02));   // 36 + 4 + 1
    CHECK(cov(3, 3) == doctest::Approx(26.0).epsilon(0.02));   // 9 + 16 + 1
    CHECK(std::fabs(cov(0, 1)) < 0.02);                        // independent roots
    CHECK(cov(0, 2) == doctest::Approx(-6.0).epsilon(0.02));
}

TEST_CASE("samplers are bit-deterministic in the seed") {
    const Dataset a = sample_sem2(500, 77);
    const Dataset b = sample_sem2(500, 77);
    CHECK(a.values() == b.values());
    const Dataset c = sample_sem2(500, 78);
    CHECK(a.values() != c.values());

    const Dataset d1 = sample_sem1(500, 12);
    const Dataset d2 = sample_sem1(500, 12);
    CHECK(d1.values() == d2.values());
}

TEST_CASE("tuple benchmark structure") {
    const long n = 50000;
    const Dataset d = sample_sem1(n, 8);
    REQUIRE(d.column_count() == 13);
    REQUIRE(d.groups().has_value());
    CHECK(d.groups()->variables.labels() ==
          std::vector<std::string>{"X1", "X2", "X3", "X4"});

    // the copied component is exactly equal
    CHECK(d.values().col(0) == d.values().col(3));

    // sum of two fair bits: {0,1,2} with probabilities 1/4, 1/2, 1/4
    int counts[3] = {0, 0, 0};
    for (long r = 0; r < n; ++r) {
        const int value = static_cast<int>(d.values()(r, 9));
        REQUIRE(value >= 0);
        REQUIRE(value <= 2);
        ++counts[value];
    }
    CHECK(counts[0] / double(n) == doctest::Approx(0.25).epsilon(0.05));
    CHECK(counts[1] / double(n) == doctest::Approx(0.50).epsilon(0.05));
    CHECK(counts[2] / double(n) == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("random faithful instances") {
    const auto [empty, empty_oracle] = random_faithful_instance(4, 0.0, 3);
    CHECK(empty.edge_count() == 0);
    CHECK(empty_oracle->independent(0, 1, 0));

    const auto [complete, complete_oracle] = random_faithful_instance(4, 1.0, 3);
    CHECK(complete.edge_count() == 6);
    CHECK_FALSE(complete_oracle->independent(0, 1, 0));

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto [g, oracle] = random_faithful_instance(6, 0.4, seed);
        CHECK(g.node_count() == 6);  // construction already guarantees acyclicity
        CHECK(oracle->capability() == Capability::Exact);
    }

    // same seed, same graph
    CHECK(random_faithful_instance(5, 0.5, 11).first ==
          random_faithful_instance(5, 0.5, 11).first);
}

TEST_CASE("oracle-mode experiment is deterministic and one-sided") {
    ExperimentConfig config;
    config.sem.kind = SemSpec::Kind::Sem2;
    config.mode = ExperimentMode::OracleExact;
    config.algorithms = {Algorithm::Vcs, Algorithm::PcConservative};
    config.replications = 5;
    const ExperimentReport report = run_experiment(config);
    CHECK(report.consistency_percent.at(Algorithm::Vcs) == 100.0);
    CHECK(report.consistency_percent.at(Algorithm::PcConservative) == 0.0);
    for (const ReplicationRow& row : report.rows) {
        if (row.algorithm == Algorithm::Vcs) CHECK(row.status == "success");
        else CHECK(row.status == "ambiguous");
    }
}

TEST_CASE("reports reproduce and replication prefixes agree") {
    ExperimentConfig config;
    config.sem.kind = SemSpec::Kind::Sem2;
    config.mode = ExperimentMode::Data;
    config.algorithms = {Algorithm::Vcs};
    config.replications = 6;
    config.samples = 2000;
    config.master_seed = 424242;

    const ExperimentReport a = run_experiment(config);
    const ExperimentReport b = run_experiment(config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t t = 0; t < a.rows.size(); ++t) {
        CHECK(a.rows[t].seed == b.rows[t].seed);
        CHECK(a.rows[t].status == b.rows[t].status);
        CHECK(a.rows[t].consistent == b.rows[t].consistent);
        CHECK(a.rows[t].queries == b.rows[t].queries);
    }

    // a shorter run is a prefix of a longer one
    config.replications = 3;
    const ExperimentReport prefix = run_experiment(config);
    for (std::size_t t = 0; t < prefix.rows.size(); ++t) {
        CHECK(prefix.rows[t].seed == a.rows[t].seed);
        CHECK(prefix.rows[t].consistent == a.rows[t].consistent);
    }

    // workers only change scheduling, not results
    config.replications = 6;
    config.workers = 3;
    const ExperimentReport parallel = run_experiment(config);
    for (std::size_t t = 0; t < a.rows.size(); ++t)
        CHECK(parallel.rows[t].consistent == a.rows[t].consistent);
}

TEST_CASE("data-mode experiment on the linear benchmark separates the algorithms") {
    ExperimentConfig config;
    config.sem.kind = SemSpec::Kind::Sem2;
    config.mode = ExperimentMode::Data;
    config.algorithms = {Algorithm::Vcs, Algorithm::PcConservative};
    config.replications = 20;
    config.samples = 10000;
    config.master_seed = 7;
    const ExperimentReport report = run_experiment(config);
    CHECK(report.consistency_percent.at(Algorithm::Vcs) >= 70.0);
    CHECK(report.consistency_percent.at(Algorithm::PcConservative) <= 30.0);
}

TEST_CASE("random-linear experiment in oracle mode is always consistent") {
    ExperimentConfig config;
    config.sem.kind = SemSpec::Kind::RandomLinear;
    config.sem.node_count = 6;
    config.sem.edge_prob = 0.4;
    config.sem.structure_seed = 99;
    config.mode = ExperimentMode::OracleExact;
    config.algorithms = {Algorithm::Vcs, Algorithm::PcClassic};
    config.replications = 3;
    const ExperimentReport report = run_experiment(config);
    CHECK(report.consistency_percent.at(Algorithm::Vcs) == 100.0);
    CHECK(report.consistency_percent.at(Algorithm::PcClassic) == 100.0);
}
