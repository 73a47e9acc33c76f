#ifndef CAUSAL_GRAPH_HPP
#define CAUSAL_GRAPH_HPP

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "causal/node_set.hpp"
#include "causal/types.hpp"

namespace causal {

// Unshielded triple i - k - j (i and j non-adjacent), canonical i < j.
struct VConfig {
    int i;
    int k;  // centre
    int j;

    static VConfig make(int a, int centre, int b) {
        if (a > b) std::swap(a, b);
        return VConfig{a, centre, b};
    }

    auto operator<=>(const VConfig&) const = default;
};

std::string render_vconfig(const VConfig& vc, const NodeSet& nodes);

class Skeleton {
public:
    Skeleton(NodeSet nodes, std::vector<std::pair<int, int>> edges);

    const NodeSet& nodes() const { return nodes_; }
    int node_count() const { return nodes_.size(); }

    // Canonical (min,max) pairs, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool adjacent(int a, int b) const;
    NodeMask neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

    bool operator==(const Skeleton& other) const {
        return nodes_ == other.nodes_ && edges_ == other.edges_;
    }

private:
    NodeSet nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<NodeMask> adjacency_;
};

class Dag {
public:
    // Validates: labels in range, no self-loops, at most one edge per unordered
    // pair, acyclic. Throws std::invalid_argument otherwise.
    Dag(NodeSet nodes, std::vector<std::pair<int, int>> edges);

    const NodeSet& nodes() const { return nodes_; }
    int node_count() const { return nodes_.size(); }

    // (tail, head) pairs, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int tail, int head) const;
    bool adjacent(int a, int b) const;

    NodeMask parents(int v) const { return parents_[static_cast<std::size_t>(v)]; }
    NodeMask children(int v) const { return children_[static_cast<std::size_t>(v)]; }

    Skeleton skeleton() const;

    bool operator==(const Dag& other) const {
        return nodes_ == other.nodes_ && edges_ == other.edges_;
    }

private:
    NodeSet nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<NodeMask> parents_;
    std::vector<NodeMask> children_;
};

// Skeleton plus the set of collider v-configurations: the canonical
// representative of a Markov equivalence class.
struct Pattern {
    Skeleton skeleton;
    std::vector<VConfig> colliders;  // sorted

    bool operator==(const Pattern& other) const {
        return skeleton == other.skeleton && colliders == other.colliders;
    }
};

// True iff `edges` over n nodes contain no directed cycle.
bool edges_acyclic(int n, const std::vector<std::pair<int, int>>& edges);

// All nodes outside `targets` with a directed path into `targets`.
NodeMask ancestors_of(const Dag& g, NodeMask targets);
std::vector<std::string> ancestor_labels(const Dag& g, const std::vector<std::string>& targets);

// d-separation of a and b given cond, via reachability in the moralized
// ancestral subgraph. Preconditions: a != b, neither in cond.
bool d_separated(const Dag& g, int a, int b, NodeMask cond);

// Every unshielded triple of s, canonical, sorted.
std::vector<VConfig> v_configurations(const Skeleton& s);

Pattern dag_to_pattern(const Dag& g);

// Pattern equality; throws std::invalid_argument on node-set mismatch.
bool markov_equivalent(const Dag& g1, const Dag& g2);

// All acyclic orientations of s, in ascending orientation-mask order
// (bit e of the mask orients edge e low->high). Guarded by max_edges.
std::vector<Dag> enumerate_dags_with_skeleton(const Skeleton& s,
                                              int max_edges = kOrientationGuardEdges);

}  // namespace causal

#endif  // CAUSAL_GRAPH_HPP
