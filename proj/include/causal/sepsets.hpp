#ifndef CAUSAL_SEPSETS_HPP
#define CAUSAL_SEPSETS_HPP

#include <map>
#include <utility>
#include <vector>

#include "causal/ci.hpp"
#include "causal/graph.hpp"

namespace causal {

// For every non-adjacent pair: ALL conditioning sets the oracle separates it
// by, in card-lex order. The orientation rule quantifies over every
// separating set, so partial recording would be wrong.
class SepsetIndex {
public:
    void record(int i, int j, std::vector<NodeMask> sepsets);

    // Null for pairs with no entry (adjacent pairs).
    const std::vector<NodeMask>* sepsets(int i, int j) const;

    bool is_separating(int i, int j, NodeMask c) const;

    const std::map<std::pair<int, int>, std::vector<NodeMask>>& all() const { return sets_; }

private:
    std::map<std::pair<int, int>, std::vector<NodeMask>> sets_;
};

struct SkeletonDiscovery {
    Skeleton skeleton;
    SepsetIndex sepsets;
};

// Skeleton of the oracle's independence relation: pair adjacent iff no
// conditioning set separates it. Queries all 2^(n-2) subsets per pair.
SkeletonDiscovery build_skeleton(const CiOracle& oracle, int max_nodes = kSubsetGuardNodes);

}  // namespace causal

#endif  // CAUSAL_SEPSETS_HPP
