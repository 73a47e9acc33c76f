#include "causal/discovery.hpp"

#include <algorithm>
#include <set>

namespace causal {

const char* discovery_status_name(DiscoveryStatus s) {
    switch (s) {
        case DiscoveryStatus::Success: return "success";
        case DiscoveryStatus::Infeasible: return "infeasible";
        case DiscoveryStatus::AmbiguousMec: return "ambiguous-mec";
    }
    return "?";
}

DiscoveryResult discover(const CiOracle& oracle, const DiscoverOptions& options) {
    CachedOracle cache(oracle);
    SkeletonDiscovery sk = build_skeleton(cache, options.max_nodes);
    std::vector<VConfigAssignment> assignments = orient_vconfigs(sk.skeleton, sk.sepsets, cache);
    OrientationModel model = build_model(sk.skeleton, assignments);

    DiscoveryResult result{std::move(sk.skeleton), std::move(sk.sepsets), std::move(assignments),
                           std::nullopt,           DiscoveryStatus::Success,
                           0,                      0,
                           0,                      0,
                           {}};

    if (options.check_unique) {
        Enumeration all = enumerate_all(model, options.enumerate_limit);
        result.solution_count = all.solutions.size();
        if (all.solutions.empty()) {
            result.status = DiscoveryStatus::Infeasible;
            SolveResult probe = solve_one(model);  // recover conflict diagnostics
            result.conflict = std::move(probe.conflict);
        } else {
            std::vector<Pattern> patterns;
            for (const Solution& s : all.solutions) {
                Pattern p = dag_to_pattern(s.dag);
                if (std::find(patterns.begin(), patterns.end(), p) == patterns.end())
                    patterns.push_back(std::move(p));
            }
            result.distinct_patterns = patterns.size();
            result.solution = std::move(all.solutions.front());
            result.status = patterns.size() > 1 ? DiscoveryStatus::AmbiguousMec
                                                : DiscoveryStatus::Success;
        }
    } else {
        SolveResult solved = solve_one(model);
        if (solved.solution) {
            result.solution = std::move(solved.solution);
        } else {
            result.status = DiscoveryStatus::Infeasible;
            result.conflict = std::move(solved.conflict);
        }
    }

    result.oracle_evaluations = cache.misses();
    result.oracle_hits = cache.hits();
    return result;
}

CheckResult check_vous(const CiOracle& oracle, const Dag& g) {
    const NodeMask all = g.nodes().full_mask();
    for (const VConfig& vc : v_configurations(g.skeleton())) {
        if (g.has_edge(vc.i, vc.k) && g.has_edge(vc.j, vc.k)) continue;  // collider
        const NodeMask universe = all & ~mask_bit(vc.i) & ~mask_bit(vc.j) & ~mask_bit(vc.k);
        CheckResult failure;
        const bool ok = for_each_subset(universe, [&](NodeMask c) {
            if (oracle.independent(vc.i, vc.j, c) &&
                !oracle.independent(vc.i, vc.j, c | mask_bit(vc.k))) {
                failure = CheckResult{false, vc, c};
                return false;
            }
            return true;
        });
        if (!ok) return failure;
    }
    return CheckResult{};
}

CheckResult check_collider_stable(const CiOracle& oracle, const Dag& g) {
    const NodeMask all = g.nodes().full_mask();
    for (const VConfig& vc : v_configurations(g.skeleton())) {
        if (!(g.has_edge(vc.i, vc.k) && g.has_edge(vc.j, vc.k))) continue;
        const NodeMask universe = all & ~mask_bit(vc.i) & ~mask_bit(vc.j) & ~mask_bit(vc.k);
        const bool separated = !for_each_subset(universe, [&](NodeMask c) {
            return !oracle.independent(vc.i, vc.j, c);  // stop once separated
        });
        if (!separated) return CheckResult{false, vc, std::nullopt};
    }
    return CheckResult{};
}

CheckResult check_v_stable(const CiOracle& oracle, const Skeleton& s) {
    const NodeMask all = s.nodes().full_mask();
    for (const VConfig& vc : v_configurations(s)) {
        const NodeMask universe = all & ~mask_bit(vc.i) & ~mask_bit(vc.j) & ~mask_bit(vc.k);
        CheckResult failure;
        const bool ok = for_each_subset(universe, [&](NodeMask c) {
            if (oracle.independent(vc.i, vc.j, c) &&
                oracle.independent(vc.i, vc.j, c | mask_bit(vc.k))) {
                failure = CheckResult{false, vc, c};
                return false;
            }
            return true;
        });
        if (!ok) return failure;
    }
    return CheckResult{};
}

ModVStabilityResult check_modified_v_stable(const CiOracle& oracle,
                                            const DiscoverOptions& options) {
    CachedOracle cache(oracle);
    SkeletonDiscovery sk = build_skeleton(cache, options.max_nodes);
    std::vector<VConfigAssignment> assignments = orient_vconfigs(sk.skeleton, sk.sepsets, cache);
    Enumeration all = enumerate_all(build_model(sk.skeleton, assignments),
                                    options.enumerate_limit);

    ModVStabilityResult result;
    result.solution_count = all.solutions.size();
    if (all.solutions.empty()) {
        result.status = ModVStability::NoSolution;
        return result;
    }
    std::vector<Pattern> patterns;
    for (const Solution& s : all.solutions) {
        Pattern p = dag_to_pattern(s.dag);
        if (std::find(patterns.begin(), patterns.end(), p) == patterns.end())
            patterns.push_back(std::move(p));
    }
    result.distinct_patterns = patterns.size();
    result.status = patterns.size() == 1 ? ModVStability::Stable : ModVStability::Unstable;
    return result;
}

bool check_adjacency_faithful(const CiOracle& oracle, const Dag& g, int max_nodes) {
    return build_skeleton(oracle, max_nodes).skeleton == g.skeleton();
}

}  // namespace causal
