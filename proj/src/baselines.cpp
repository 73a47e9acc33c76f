#include "causal/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace causal {

PcResult pc_classic(const CiOracle& oracle, int max_nodes) {
    SkeletonDiscovery sk = build_skeleton(oracle, max_nodes);
    PcResult result{std::move(sk.skeleton), {}, {}, {}};
    for (const auto& [pair, sepsets] : sk.sepsets.all())
        result.chosen_sepsets[pair] = sepsets.front();
    for (const VConfig& vc : v_configurations(result.skeleton)) {
        const NodeMask sepset = result.chosen_sepsets.at({vc.i, vc.j});
        if (!mask_has(sepset, vc.k)) result.colliders.push_back(vc);
    }
    return result;
}

PcResult pc_conservative(const CiOracle& oracle, int max_nodes) {
    SkeletonDiscovery sk = build_skeleton(oracle, max_nodes);
    PcResult result{std::move(sk.skeleton), {}, {}, {}};
    for (const VConfig& vc : v_configurations(result.skeleton)) {
        const auto* sepsets = sk.sepsets.sepsets(vc.i, vc.j);
        if (sepsets == nullptr || sepsets->empty())
            throw std::invalid_argument("v-configuration endpoints have no separating set");
        int containing = 0;
        for (NodeMask c : *sepsets)
            if (mask_has(c, vc.k)) ++containing;
        if (containing == 0) result.colliders.push_back(vc);
        else if (containing < static_cast<int>(sepsets->size())) result.ambiguous.push_back(vc);
        // centre in every separating set: definite non-collider
    }
    return result;
}

Dag minimal_imap(const CiOracle& oracle, const std::vector<int>& order) {
    const int n = oracle.nodes().size();
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("order length mismatch");
    std::vector<std::pair<int, int>> edges;
    NodeMask predecessors = 0;
    for (int b = 0; b < n; ++b) {
        for (int a = 0; a < b; ++a) {
            const NodeMask cond = predecessors & ~mask_bit(order[static_cast<std::size_t>(a)]);
            if (!oracle.independent(order[static_cast<std::size_t>(a)],
                                    order[static_cast<std::size_t>(b)], cond))
                edges.emplace_back(order[static_cast<std::size_t>(a)],
                                   order[static_cast<std::size_t>(b)]);
        }
        predecessors |= mask_bit(order[static_cast<std::size_t>(b)]);
    }
    return Dag(oracle.nodes(), std::move(edges));
}

SpResult sp_bruteforce(const CiOracle& oracle, int max_nodes) {
    const int n = oracle.nodes().size();
    if (n > max_nodes)
        throw guard_error("permutation scan over " + std::to_string(n) +
                          " nodes exceeds guard of " + std::to_string(max_nodes));

    SpResult result;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    int best = -1;
    do {
        ++result.permutations_scanned;
        Dag dag = minimal_imap(oracle, order);
        const int edges = dag.edge_count();
        if (best < 0 || edges < best) {
            best = edges;
            result.sparsest.clear();
        }
        if (edges == best) {
            bool known = false;
            for (const PermutationImap& kept : result.sparsest)
                if (kept.dag == dag) {
                    known = true;
                    break;
                }
            if (!known) result.sparsest.push_back(PermutationImap{order, std::move(dag), edges});
        }
    } while (std::next_permutation(order.begin(), order.end()));

    result.min_edge_count = best;
    result.smr_holds = true;
    for (std::size_t t = 1; t < result.sparsest.size(); ++t)
        if (!markov_equivalent(result.sparsest[t].dag, result.sparsest.front().dag)) {
            result.smr_holds = false;
            break;
        }
    return result;
}

}  // namespace causal
