#include "doctest.h"

#include "causal/bench.hpp"
#include "causal/orientation.hpp"
#include "causal/rng.hpp"
#include "causal/sepsets.hpp"
#include "test_helpers.hpp"

using namespace causal;
using namespace causal::testing;

namespace {

// 1->2->3<-4 closure plus the extra unconditional independence of (1,3).
TableOracle chain_collider_oracle() {
    const Dag g = make_dag(4, {{0, 1}, {1, 2}, {3, 2}});
    return TableOracle(markov_closure_table(g, {CiQuery::make(0, 2, 0)}));
}

}  // namespace

TEST_CASE("skeleton of the linear-benchmark relation") {
    const TableOracle oracle(sem2_reference_table());
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    CHECK(skeleton.edges() == std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    REQUIRE(sepsets.sepsets(0, 1) != nullptr);
    CHECK(*sepsets.sepsets(0, 1) == std::vector<NodeMask>{0, mask_bit(2) | mask_bit(3)});
    REQUIRE(sepsets.sepsets(2, 3) != nullptr);
    CHECK(*sepsets.sepsets(2, 3) == std::vector<NodeMask>{mask_bit(0) | mask_bit(1)});
    CHECK(sepsets.sepsets(0, 2) == nullptr);
}

TEST_CASE("skeleton under an adjacency-faithfulness violation") {
    // {1_||_3|2, 2_||_4|{1,3}, 1_||_2|4} severs the 1-2 edge of the 4-cycle
    const TableOracle oracle(
        TableOracle(make_table(4, {"1 _||_ 3 | 2", "2 _||_ 4 | 1,3", "1 _||_ 2 | 4"})));
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    CHECK(skeleton.edges() == std::vector<std::pair<int, int>>{{0, 3}, {1, 2}, {2, 3}});
}

TEST_CASE("skeleton from a d-separation oracle recovers the graph") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed + 1000);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (rng.uniform01() < 0.45) edges.emplace_back(i, j);
        const Dag g = make_dag(6, edges);
        const DsepOracle oracle(g);
        CHECK(build_skeleton(oracle).skeleton == g.skeleton());
    }
}

TEST_CASE("skeleton guard") {
    const TableOracle oracle(CiTable(numbered_nodes(13)));
    CHECK_THROWS_AS(build_skeleton(oracle), guard_error);
}

TEST_CASE("orientation on the linear-benchmark relation") {
    const TableOracle oracle(sem2_reference_table());
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    const auto assignments = orient_vconfigs(skeleton, sepsets, oracle);
    REQUIRE(assignments.size() == 4);
    CHECK(assignments[0].vc == VConfig{0, 2, 1});
    CHECK(assignments[0].label == VLabel::Collider);
    CHECK(assignments[0].witness_cond == NodeMask{0});
    CHECK(assignments[1].vc == VConfig{0, 3, 1});
    CHECK(assignments[1].label == VLabel::Collider);
    CHECK(assignments[2].vc == VConfig{2, 0, 3});
    CHECK(assignments[2].label == VLabel::NonCollider);
    CHECK(assignments[3].vc == VConfig{2, 1, 3});
    CHECK(assignments[3].label == VLabel::NonCollider);
}

TEST_CASE("orientation leaves the ambiguous triple unassigned") {
    const TableOracle oracle = chain_collider_oracle();
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    CHECK(skeleton.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
    const auto assignments = orient_vconfigs(skeleton, sepsets, oracle);
    REQUIRE(assignments.size() == 2);
    CHECK(assignments[0].vc == VConfig{0, 1, 2});
    CHECK(assignments[0].label == VLabel::Unassigned);
    CHECK(assignments[1].vc == VConfig{1, 2, 3});
    CHECK(assignments[1].label == VLabel::Collider);
}

TEST_CASE("orientation on a path with both-way separation stays unassigned") {
    const TableOracle oracle(make_table(3, {"1 _||_ 3 |", "1 _||_ 3 | 2"}));
    const auto [skeleton, sepsets] = build_skeleton(oracle);
    const auto assignments = orient_vconfigs(skeleton, sepsets, oracle);
    REQUIRE(assignments.size() == 1);
    CHECK(assignments[0].label == VLabel::Unassigned);
}

TEST_CASE("reduced orientation scan equals the naive subset scan") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const CiTable table = random_table(4 + static_cast<int>(seed % 2), seed * 13 + 5);
        const TableOracle oracle(table);
        const auto [skeleton, sepsets] = build_skeleton(oracle);
        const auto reduced = orient_vconfigs(skeleton, sepsets, oracle);
        const auto naive = naive_orient(skeleton, oracle);
        REQUIRE(reduced.size() == naive.size());
        for (std::size_t t = 0; t < reduced.size(); ++t) {
            CHECK(reduced[t].vc == naive[t].vc);
            CHECK(reduced[t].label == naive[t].label);
            if (reduced[t].label == VLabel::Collider)
                CHECK(reduced[t].witness_cond == naive[t].witness_cond);
        }
    }
}

TEST_CASE("d-separation oracles never leave unassigned labels") {
    // V-stability holds for exact graph relations, so the rule always decides;
    // colliders are exactly the triples with a separating set missing the centre.
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed + 77);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                if (rng.uniform01() < 0.5) edges.emplace_back(i, j);
        const Dag g = make_dag(5, edges);
        const DsepOracle oracle(g);
        const auto [skeleton, sepsets] = build_skeleton(oracle);
        for (const auto& a : orient_vconfigs(skeleton, sepsets, oracle)) {
            CHECK(a.label != VLabel::Unassigned);
            const auto* sets = sepsets.sepsets(a.vc.i, a.vc.j);
            REQUIRE(sets != nullptr);
            bool some_set_omits_centre = false;
            for (NodeMask c : *sets)
                if (!mask_has(c, a.vc.k)) some_set_omits_centre = true;
            CHECK((a.label == VLabel::Collider) == some_set_omits_centre);
            const bool truly_collider = g.has_edge(a.vc.i, a.vc.k) && g.has_edge(a.vc.j, a.vc.k);
            CHECK((a.label == VLabel::Collider) == truly_collider);
        }
    }
}
