#include "doctest.h"

#include "causal/bench.hpp"
#include "causal/discovery.hpp"
#include "causal/rng.hpp"
#include "test_helpers.hpp"

using namespace causal;
using namespace causal::testing;

namespace {

const Dag kChainCollider = make_dag(4, {{0, 1}, {1, 2}, {3, 2}});  // 1->2->3<-4

TableOracle chain_collider_oracle() {
    return TableOracle(markov_closure_table(kChainCollider, {CiQuery::make(0, 2, 0)}));
}

Dag random_dag(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) edges.emplace_back(i, j);
    return make_dag(n, edges);
}

}  // namespace

TEST_CASE("discovery on the linear-benchmark relation") {
    const TableOracle oracle(sem2_reference_table());
    const DiscoveryResult r = discover(oracle);
    REQUIRE(r.status == DiscoveryStatus::Success);
    CHECK(r.solution->dag == sem2_truth());
    CHECK(markov_equivalent(r.solution->dag, sem2_truth()));
    CHECK(r.oracle_evaluations > 0);
    CHECK(r.oracle_evaluations <= 24 + 4);  // pair scans plus collider probes
}

TEST_CASE("discovery resolves the unassigned triple deterministically") {
    const TableOracle oracle = chain_collider_oracle();
    DiscoverOptions opts;
    opts.check_unique = true;
    const DiscoveryResult r = discover(oracle, opts);
    REQUIRE(r.status == DiscoveryStatus::Success);
    CHECK(r.solution_count == 2);  // the tail edge 1-2 flips freely
    CHECK(r.distinct_patterns == 1);
    CHECK(dag_to_pattern(r.solution->dag).colliders == std::vector<VConfig>{VConfig{1, 2, 3}});
}

TEST_CASE("discovery reports ambiguous equivalence classes") {
    const TableOracle oracle(make_table(3, {"1 _||_ 3 |", "1 _||_ 3 | 2"}));
    DiscoverOptions opts;
    opts.check_unique = true;
    const DiscoveryResult r = discover(oracle, opts);
    CHECK(r.status == DiscoveryStatus::AmbiguousMec);
    CHECK(r.solution_count == 4);
    CHECK(r.distinct_patterns == 2);
    CHECK(r.solution.has_value());

    // without check_unique the first solution is returned silently
    const DiscoveryResult plain = discover(oracle);
    CHECK(plain.status == DiscoveryStatus::Success);
    CHECK(plain.solution->dag.has_edge(0, 1));
}

TEST_CASE("discovery returns infeasible when no orientation satisfies the rule") {
    // all four cycle triples forced non-collider, but any acyclic orientation
    // of a cycle has a sink
    const TableOracle oracle(make_table(4, {"1 _||_ 3 | 2,4", "2 _||_ 4 | 1,3"}));
    const DiscoveryResult r = discover(oracle);
    CHECK(r.status == DiscoveryStatus::Infeasible);
    CHECK_FALSE(r.solution.has_value());
    CHECK_FALSE(r.conflict.empty());

    DiscoverOptions opts;
    opts.check_unique = true;
    CHECK(discover(oracle, opts).status == DiscoveryStatus::Infeasible);
}

TEST_CASE("v-ous checker") {
    // exact relations are V-OUS wrt their own graph
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dag g = random_dag(5, 0.45, seed + 500);
        CHECK(check_vous(DsepOracle(g), g).holds);
    }

    // worked example: holds for 1->2->3<-4 with the extra independence
    CHECK(check_vous(chain_collider_oracle(), kChainCollider).holds);

    // failing case: non-collider 1~2~3 with only the marginal independence
    const Dag chain = make_dag(3, {{0, 1}, {1, 2}});
    const TableOracle sparse(make_table(3, {"1 _||_ 3 |"}));
    const CheckResult r = check_vous(sparse, chain);
    CHECK_FALSE(r.holds);
    CHECK(r.vconfig == VConfig{0, 1, 2});
    CHECK(r.cond == NodeMask{0});
}

TEST_CASE("collider-stability checker") {
    // Markovian relations are collider-stable wrt their graph
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dag g = random_dag(5, 0.45, seed + 900);
        CHECK(check_collider_stable(DsepOracle(g), g).holds);
    }

    const Dag collider = make_dag(3, {{0, 2}, {1, 2}});
    const TableOracle empty(CiTable(numbered_nodes(3)));
    const CheckResult r = check_collider_stable(empty, collider);
    CHECK_FALSE(r.holds);
    CHECK(r.vconfig == VConfig{0, 2, 1});

    // the linear-benchmark relation is collider-stable wrt its graph
    CHECK(check_collider_stable(TableOracle(sem2_reference_table()), sem2_truth()).holds);
}

TEST_CASE("v-stability checker") {
    const CheckResult r = check_v_stable(chain_collider_oracle(),
                                         build_skeleton(chain_collider_oracle()).skeleton);
    CHECK_FALSE(r.holds);
    CHECK(r.vconfig == VConfig{0, 1, 2});
    CHECK(r.cond == NodeMask{0});

    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Dag g = random_dag(5, 0.5, seed + 1300);
        const DsepOracle oracle(g);
        CHECK(check_v_stable(oracle, build_skeleton(oracle).skeleton).holds);
    }

    const TableOracle sem2(sem2_reference_table());
    CHECK(check_v_stable(sem2, build_skeleton(sem2).skeleton).holds);
}

TEST_CASE("modified v-stability checker") {
    CHECK(check_modified_v_stable(chain_collider_oracle()).status == ModVStability::Stable);

    const TableOracle path(make_table(3, {"1 _||_ 3 |", "1 _||_ 3 | 2"}));
    CHECK(check_modified_v_stable(path).status == ModVStability::Unstable);

    const TableOracle sem1(sem1_reference_table());
    const ModVStabilityResult r = check_modified_v_stable(sem1);
    CHECK(r.status == ModVStability::Stable);
    CHECK(r.solution_count == 2);

    const TableOracle infeasible(make_table(4, {"1 _||_ 3 | 2,4", "2 _||_ 4 | 1,3"}));
    CHECK(check_modified_v_stable(infeasible).status == ModVStability::NoSolution);
}

TEST_CASE("adjacency-faithfulness checker") {
    const TableOracle cycle_table(make_table(4, {"1 _||_ 3 | 2", "2 _||_ 4 | 1,3", "1 _||_ 2 | 4"}));
    const Dag cycle_g0 = make_dag(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK_FALSE(check_adjacency_faithful(cycle_table, cycle_g0));

    const TableOracle sem1(sem1_reference_table());
    CHECK(check_adjacency_faithful(sem1, sem1_truth()));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dag g = random_dag(5, 0.4, seed + 1700);
        CHECK(check_adjacency_faithful(DsepOracle(g), g));
    }
}

TEST_CASE("characterisation: assignments hold iff V-OUS and collider-stability hold") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const CiTable table = random_table(4, seed * 31 + 7, 0.6, 0.3);
        const TableOracle oracle(table);
        const auto [skeleton, sepsets] = build_skeleton(oracle);
        const auto assignments = orient_vconfigs(skeleton, sepsets, oracle);
        for (const Dag& g : enumerate_dags_with_skeleton(skeleton)) {
            const bool respects = respects_assignments(g, assignments);
            const bool conditions =
                check_vous(oracle, g).holds && check_collider_stable(oracle, g).holds;
            CHECK(respects == conditions);
        }
    }
}

TEST_CASE("equivalent graphs get equal checker verdicts") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const CiTable table = random_table(4, seed * 101 + 3, 0.5, 0.3);
        const TableOracle oracle(table);
        const auto dags = all_dags(4);
        for (std::size_t x = 0; x < dags.size(); x += 7) {
            for (std::size_t y = x + 1; y < dags.size(); y += 13) {
                if (!markov_equivalent(dags[x], dags[y])) continue;
                CHECK(check_vous(oracle, dags[x]).holds == check_vous(oracle, dags[y]).holds);
                CHECK(check_collider_stable(oracle, dags[x]).holds ==
                      check_collider_stable(oracle, dags[y]).holds);
            }
        }
    }
}

TEST_CASE("soundness of success") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const CiTable table = random_table(4, seed * 17 + 11, 0.5, 0.25);
        const TableOracle oracle(table);
        const DiscoveryResult r = discover(oracle);
        if (r.status != DiscoveryStatus::Success) continue;
        const Dag& g = r.solution->dag;
        CHECK(g.skeleton() == r.skeleton);
        CHECK(check_vous(oracle, g).holds);
        CHECK(check_collider_stable(oracle, g).holds);
    }
}

TEST_CASE("consistency under faithfulness") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Dag g = random_dag(3 + static_cast<int>(seed % 4), 0.45, seed + 2100);
        const DsepOracle oracle(g);
        const DiscoveryResult r = discover(oracle);
        REQUIRE(r.status == DiscoveryStatus::Success);
        CHECK(markov_equivalent(r.solution->dag, g));
    }
}
