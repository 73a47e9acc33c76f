#include "causal/sepsets.hpp"

#include <algorithm>
#include <stdexcept>

namespace causal {

void SepsetIndex::record(int i, int j, std::vector<NodeMask> sepsets) {
    if (i > j) std::swap(i, j);
    sets_[{i, j}] = std::move(sepsets);
}

const std::vector<NodeMask>* SepsetIndex::sepsets(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = sets_.find({i, j});
    return it == sets_.end() ? nullptr : &it->second;
}

bool SepsetIndex::is_separating(int i, int j, NodeMask c) const {
    const auto* sets = sepsets(i, j);
    if (sets == nullptr) return false;
    return std::binary_search(sets->begin(), sets->end(), c, card_lex_less);
}

SkeletonDiscovery build_skeleton(const CiOracle& oracle, int max_nodes) {
    const NodeSet& nodes = oracle.nodes();
    const int n = nodes.size();
    if (n > max_nodes)
        throw guard_error("skeleton search over " + std::to_string(n) +
                          " nodes exceeds guard of " + std::to_string(max_nodes));

    const NodeMask all = nodes.full_mask();
    SepsetIndex index;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<NodeMask> sepsets;
            const NodeMask universe = all & ~mask_bit(i) & ~mask_bit(j);
            for_each_subset(universe, [&](NodeMask c) {
                if (oracle.independent(i, j, c)) sepsets.push_back(c);
                return true;
            });
            if (sepsets.empty()) edges.emplace_back(i, j);
            else index.record(i, j, std::move(sepsets));
        }
    }
    return SkeletonDiscovery{Skeleton(nodes, std::move(edges)), std::move(index)};
}

}  // namespace causal
