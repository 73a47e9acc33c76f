#ifndef CAUSAL_DISCOVERY_HPP
#define CAUSAL_DISCOVERY_HPP

#include <cstdint>
#include <optional>

#include "causal/dag_solve.hpp"
#include "causal/orientation.hpp"
#include "causal/sepsets.hpp"

namespace causal {

enum class DiscoveryStatus { Success, Infeasible, AmbiguousMec };

const char* discovery_status_name(DiscoveryStatus s);

struct DiscoveryResult {
    Skeleton skeleton;
    SepsetIndex sepsets;
    std::vector<VConfigAssignment> assignments;
    std::optional<Solution> solution;  // present iff status != Infeasible
    DiscoveryStatus status = DiscoveryStatus::Success;

    // Filled when check_unique is set.
    std::size_t solution_count = 0;
    std::size_t distinct_patterns = 0;

    std::uint64_t oracle_evaluations = 0;  // distinct canonical queries
    std::uint64_t oracle_hits = 0;

    std::vector<std::string> conflict;  // infeasibility diagnostics
};

struct DiscoverOptions {
    bool check_unique = false;
    int max_nodes = kSubsetGuardNodes;
    std::size_t enumerate_limit = kDefaultEnumerationLimit;
};

// Skeleton discovery, v-configuration orientation, then a DAG consistent with
// the assignments. With check_unique, enumerates every consistent DAG and
// reports AmbiguousMec when they span more than one pattern.
DiscoveryResult discover(const CiOracle& oracle, const DiscoverOptions& options = {});

// Checker outcomes carry the first counterexample found, if any.
struct CheckResult {
    bool holds = true;
    std::optional<VConfig> vconfig;
    std::optional<NodeMask> cond;
};

// For every non-collider v-configuration i~k~j of g and every C excluding
// {i,j,k}: separation by C must survive adding k.
CheckResult check_vous(const CiOracle& oracle, const Dag& g);

// Every collider of g must have at least one separating set for its endpoints.
CheckResult check_collider_stable(const CiOracle& oracle, const Dag& g);

// No v-configuration of s may be separated both by some C and by C u {k}.
CheckResult check_v_stable(const CiOracle& oracle, const Skeleton& s);

enum class ModVStability { Stable, Unstable, NoSolution };

struct ModVStabilityResult {
    ModVStability status = ModVStability::NoSolution;
    std::size_t solution_count = 0;
    std::size_t distinct_patterns = 0;
};

// All DAGs satisfying the orientation rule share one pattern?
ModVStabilityResult check_modified_v_stable(const CiOracle& oracle,
                                            const DiscoverOptions& options = {});

// Discovered skeleton equals sk(g).
bool check_adjacency_faithful(const CiOracle& oracle, const Dag& g,
                              int max_nodes = kSubsetGuardNodes);

}  // namespace causal

#endif  // CAUSAL_DISCOVERY_HPP
