#include "doctest.h"

#include <algorithm>

#include "causal/bench.hpp"
#include "causal/dag_solve.hpp"
#include "causal/rng.hpp"
#include "causal/sepsets.hpp"
#include "test_helpers.hpp"

using namespace causal;
using namespace causal::testing;

namespace {

std::vector<VConfigAssignment> assignments_for(const Skeleton& s,
                                               const std::vector<std::pair<VConfig, VLabel>>& spec) {
    std::vector<VConfigAssignment> out;
    for (const auto& [vc, label] : spec) out.push_back(VConfigAssignment{vc, label, std::nullopt});
    return out;
}

// brute-force reference: filter all acyclic orientations by the constraints
std::vector<Dag> brute_solutions(const OrientationModel& model) {
    std::vector<Dag> out;
    for (const Dag& g : enumerate_dags_with_skeleton(model.skeleton))
        if (satisfies(model, g)) out.push_back(g);
    return out;
}

std::vector<std::vector<std::pair<int, int>>> edge_lists(std::vector<Dag> dags) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for (const Dag& g : dags) out.push_back(g.edges());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("model building fixes collider edges") {
    const TableOracle oracle(sem2_reference_table());
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    const auto assignments = orient_vconfigs(skeleton, sepsets, oracle);
    const OrientationModel model = build_model(skeleton, assignments);
    CHECK(model.units.size() == 4);  // two colliders, two fixings each
    CHECK(model.clauses.size() == 2);
    CHECK_FALSE(model.trivially_infeasible);

    const SolveResult solved = solve_one(model);
    REQUIRE(solved.solution.has_value());
    CHECK(solved.solution->dag == sem2_truth());
}

TEST_CASE("contradictory labels are infeasible at build") {
    const Skeleton path(numbered_nodes(3), {{0, 1}, {1, 2}});
    const VConfig vc{0, 1, 2};
    const OrientationModel model = build_model(
        path, assignments_for(path, {{vc, VLabel::Collider}, {vc, VLabel::NonCollider}}));
    CHECK(model.trivially_infeasible);
    CHECK_FALSE(solve_one(model).solution.has_value());
    CHECK(enumerate_all(model).solutions.empty());
}

TEST_CASE("unconstrained model enumerates all acyclic orientations") {
    const Skeleton square(numbered_nodes(4), {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const OrientationModel model = build_model(square, {});
    const Enumeration all = enumerate_all(model);
    CHECK(all.solutions.size() == 14);
    CHECK_FALSE(all.truncated);
}

TEST_CASE("all-non-collider 4-cycle is infeasible") {
    // every acyclic orientation of a cycle has a sink, and all triples here
    // are unshielded, so some non-collider label is always violated
    const Skeleton square(numbered_nodes(4), {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const OrientationModel model =
        build_model(square, assignments_for(square, {{VConfig{0, 1, 2}, VLabel::NonCollider},
                                                     {VConfig{1, 2, 3}, VLabel::NonCollider},
                                                     {VConfig{1, 0, 3}, VLabel::NonCollider},
                                                     {VConfig{0, 3, 2}, VLabel::NonCollider}}));
    const SolveResult solved = solve_one(model);
    CHECK_FALSE(solved.solution.has_value());
    CHECK_FALSE(solved.conflict.empty());
    CHECK(brute_solutions(model).empty());
}

TEST_CASE("forced collider with free tail edge") {
    // path 1-2-3-4 with collider 2~3~4: both orientations of 1-2 remain
    const Skeleton path(numbered_nodes(4), {{0, 1}, {1, 2}, {2, 3}});
    const OrientationModel model =
        build_model(path, assignments_for(path, {{VConfig{1, 2, 3}, VLabel::Collider}}));
    const Enumeration all = enumerate_all(model);
    REQUIRE(all.solutions.size() == 2);
    for (const Solution& s : all.solutions) {
        CHECK(s.dag.has_edge(1, 2));
        CHECK(s.dag.has_edge(3, 2));
        CHECK(dag_to_pattern(s.dag).colliders == std::vector<VConfig>{VConfig{1, 2, 3}});
    }
    // deterministic first solution takes 1 -> 2
    CHECK(solve_one(model).solution->dag.has_edge(0, 1));
}

TEST_CASE("unassigned triple keeps all four path orientations") {
    const Skeleton path(numbered_nodes(3), {{0, 1}, {1, 2}});
    const OrientationModel model = build_model(path, {});
    const Enumeration all = enumerate_all(model);
    REQUIRE(all.solutions.size() == 4);
    std::vector<Pattern> patterns;
    for (const Solution& s : all.solutions) {
        Pattern p = dag_to_pattern(s.dag);
        if (std::find(patterns.begin(), patterns.end(), p) == patterns.end())
            patterns.push_back(std::move(p));
    }
    CHECK(patterns.size() == 2);  // collider at the centre or not
}

TEST_CASE("fully constrained model has one solution") {
    const TableOracle oracle(sem2_reference_table());
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    const OrientationModel model =
        build_model(skeleton, orient_vconfigs(skeleton, sepsets, oracle));
    const Enumeration all = enumerate_all(model);
    REQUIRE(all.solutions.size() == 1);
    CHECK(all.solutions.front().dag == sem2_truth());
}

TEST_CASE("solver equals brute force on random instances") {
    Rng rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(2));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform01() < 0.5) edges.emplace_back(i, j);
        if (edges.size() > 6) continue;
        const Skeleton s(numbered_nodes(n), edges);
        std::vector<VConfigAssignment> assignments;
        for (const VConfig& vc : v_configurations(s)) {
            const double coin = rng.uniform01();
            VLabel label = coin < 0.3   ? VLabel::Collider
                           : coin < 0.6 ? VLabel::NonCollider
                                        : VLabel::Unassigned;
            assignments.push_back(VConfigAssignment{vc, label, std::nullopt});
        }
        const OrientationModel model = build_model(s, assignments);
        Enumeration mine = enumerate_all(model);
        CHECK_FALSE(mine.truncated);
        std::vector<Dag> mine_dags;
        for (Solution& sol : mine.solutions) mine_dags.push_back(sol.dag);
        CHECK(edge_lists(mine_dags) == edge_lists(brute_solutions(model)));
        CHECK(solve_one(model).solution.has_value() == !mine.solutions.empty());
    }
}

TEST_CASE("layer witnesses are topological") {
    const TableOracle oracle(sem1_reference_table());
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    const OrientationModel model =
        build_model(skeleton, orient_vconfigs(skeleton, sepsets, oracle));
    const Enumeration all = enumerate_all(model);
    REQUIRE(all.solutions.size() == 2);  // free shielded 1-2 edge
    CHECK(markov_equivalent(all.solutions[0].dag, all.solutions[1].dag));
    for (const Solution& s : all.solutions)
        for (auto [tail, head] : s.dag.edges())
            CHECK(s.layers[static_cast<std::size_t>(tail)] <
                  s.layers[static_cast<std::size_t>(head)]);
}

TEST_CASE("enumeration limit sets the truncation flag") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
    const Skeleton complete(numbered_nodes(5), edges);
    const Enumeration some = enumerate_all(build_model(complete, {}), 10);
    CHECK(some.solutions.size() == 10);
    CHECK(some.truncated);
}

TEST_CASE("solver determinism") {
    const TableOracle oracle(sem1_reference_table());
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    const OrientationModel model =
        build_model(skeleton, orient_vconfigs(skeleton, sepsets, oracle));
    const SolveResult a = solve_one(model);
    const SolveResult b = solve_one(model);
    REQUIRE(a.solution.has_value());
    CHECK(a.solution->dag == b.solution->dag);
    CHECK(a.solution->layers == b.solution->layers);
}

TEST_CASE("constraint dump lists every constraint") {
    const TableOracle oracle(sem2_reference_table());
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    const OrientationModel model =
        build_model(skeleton, orient_vconfigs(skeleton, sepsets, oracle));
    const std::string dump = model_to_dimacs(model);
    CHECK(dump.find("p cnf 4 6") != std::string::npos);
    CHECK(std::count(dump.begin(), dump.end(), '\n') >= 10);
}
