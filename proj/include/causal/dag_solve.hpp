#ifndef CAUSAL_DAG_SOLVE_HPP
#define CAUSAL_DAG_SOLVE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causal/orientation.hpp"

namespace causal {

// Orientation feasibility problem over a skeleton: one binary variable per
// unordered edge (true = low index -> high index), unit fixings from collider
// assignments, not-both clauses from non-collider assignments, and global
// acyclicity. Solutions carry a layer assignment witnessing acyclicity.
struct OrientationModel {
    // z-value of edge e meaning "points at the high endpoint".
    struct Literal {
        int edge;
        bool toward_high;
    };
    struct NotBoth {
        Literal a;
        Literal b;
        VConfig source;
    };

    Skeleton skeleton;
    std::vector<std::pair<Literal, VConfig>> units;  // literal must hold
    std::vector<NotBoth> clauses;                    // !(a && b)
    bool trivially_infeasible = false;
    std::vector<std::string> conflict;  // best-effort diagnostics

    int edge_index(int a, int b) const;  // canonical pair lookup
};

struct Solution {
    Dag dag;
    std::vector<int> layers;  // topological numbering, edge tail < head layer
};

OrientationModel build_model(const Skeleton& skeleton,
                             const std::vector<VConfigAssignment>& assignments);

struct SolveResult {
    std::optional<Solution> solution;   // nullopt = infeasible
    std::vector<std::string> conflict;  // filled when infeasible
};

// Unit propagation (collider fixings, clause implications, cycle avoidance)
// plus backtracking over free edges in canonical order, low->high tried
// first. Deterministic.
SolveResult solve_one(const OrientationModel& model);

struct Enumeration {
    std::vector<Solution> solutions;  // deterministic search order
    bool truncated = false;
};

inline constexpr std::size_t kDefaultEnumerationLimit = 10000;

Enumeration enumerate_all(const OrientationModel& model,
                          std::size_t limit = kDefaultEnumerationLimit,
                          int max_free_edges = kSolverGuardFreeEdges);

// Brute-force constraint check, used to cross-validate the solver.
bool satisfies(const OrientationModel& model, const Dag& dag);

// One line per constraint, CNF-style literals over edge variables; acyclicity
// stated as a comment. Format for external cross-checks, not stable.
std::string model_to_dimacs(const OrientationModel& model);

}  // namespace causal

#endif  // CAUSAL_DAG_SOLVE_HPP
