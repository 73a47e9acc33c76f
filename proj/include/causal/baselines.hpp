#ifndef CAUSAL_BASELINES_HPP
#define CAUSAL_BASELINES_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "causal/sepsets.hpp"

namespace causal {

struct PcResult {
    Skeleton skeleton;
    std::vector<VConfig> colliders;                       // sorted
    std::vector<VConfig> ambiguous;                       // conservative mode only
    std::map<std::pair<int, int>, NodeMask> chosen_sepsets;  // classic mode only
};

// Classic sepset rule: record the first separating set per pair (card-lex
// order); i~k~j is a collider iff k is outside the recorded set.
PcResult pc_classic(const CiOracle& oracle, int max_nodes = kSubsetGuardNodes);

// Definite-collider rule over ALL separating sets: collider iff the centre is
// in none of them, definite non-collider iff in all, ambiguous otherwise.
PcResult pc_conservative(const CiOracle& oracle, int max_nodes = kSubsetGuardNodes);

struct PermutationImap {
    std::vector<int> order;  // first permutation producing this DAG
    Dag dag;
    int edge_count;
};

struct SpResult {
    std::vector<PermutationImap> sparsest;  // distinct DAGs, discovery order
    bool smr_holds = false;                 // sparsest DAGs all Markov equivalent
    int min_edge_count = 0;
    std::uint64_t permutations_scanned = 0;
};

// Minimal I-MAP of a node ordering: edge order[a] -> order[b] (a < b) iff the
// oracle leaves them dependent given the other predecessors of order[b].
Dag minimal_imap(const CiOracle& oracle, const std::vector<int>& order);

// Scans every permutation (factorial guard) and keeps the sparsest minimal
// I-MAPs.
SpResult sp_bruteforce(const CiOracle& oracle, int max_nodes = kPermutationGuardNodes);

}  // namespace causal

#endif  // CAUSAL_BASELINES_HPP
