#include "causal/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace causal {

namespace {

void check_node_capacity(const NodeSet& nodes) {
    if (nodes.size() > kMaxMaskNodes) throw guard_error("graph exceeds mask capacity");
}

void check_edge_range(const NodeSet& nodes, const std::vector<std::pair<int, int>>& edges) {
    for (auto [a, b] : edges) {
        if (a < 0 || a >= nodes.size() || b < 0 || b >= nodes.size())
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loop on node " + nodes.label(a));
    }
}

}  // namespace

std::string render_vconfig(const VConfig& vc, const NodeSet& nodes) {
    return nodes.label(vc.i) + "~" + nodes.label(vc.k) + "~" + nodes.label(vc.j);
}

Skeleton::Skeleton(NodeSet nodes, std::vector<std::pair<int, int>> edges)
    : nodes_(std::move(nodes)) {
    check_node_capacity(nodes_);
    check_edge_range(nodes_, edges);
    for (auto& [a, b] : edges)
        if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    adjacency_.assign(static_cast<std::size_t>(nodes_.size()), 0);
    for (auto [a, b] : edges_) {
        adjacency_[static_cast<std::size_t>(a)] |= mask_bit(b);
        adjacency_[static_cast<std::size_t>(b)] |= mask_bit(a);
    }
}

bool Skeleton::adjacent(int a, int b) const {
    return mask_has(adjacency_[static_cast<std::size_t>(a)], b);
}

bool edges_acyclic(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    for (auto [tail, head] : edges) {
        ++indegree[static_cast<std::size_t>(head)];
        children[static_cast<std::size_t>(tail)].push_back(head);
    }
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indegree[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    int removed = 0;
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        ++removed;
        for (int c : children[static_cast<std::size_t>(v)])
            if (--indegree[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
    }
    return removed == n;
}

Dag::Dag(NodeSet nodes, std::vector<std::pair<int, int>> edges) : nodes_(std::move(nodes)) {
    check_node_capacity(nodes_);
    check_edge_range(nodes_, edges);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    parents_.assign(static_cast<std::size_t>(nodes_.size()), 0);
    children_.assign(static_cast<std::size_t>(nodes_.size()), 0);
    for (auto [tail, head] : edges) {
        if (mask_has(parents_[static_cast<std::size_t>(tail)], head))
            throw std::invalid_argument("both orientations present for pair " +
                                        nodes_.label(tail) + "," + nodes_.label(head));
        parents_[static_cast<std::size_t>(head)] |= mask_bit(tail);
        children_[static_cast<std::size_t>(tail)] |= mask_bit(head);
    }
    if (!edges_acyclic(nodes_.size(), edges)) throw std::invalid_argument("directed cycle");
    edges_ = std::move(edges);
}

bool Dag::has_edge(int tail, int head) const {
    return mask_has(children_[static_cast<std::size_t>(tail)], head);
}

bool Dag::adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

Skeleton Dag::skeleton() const { return Skeleton(nodes_, edges_); }

NodeMask ancestors_of(const Dag& g, NodeMask targets) {
    NodeMask closure = targets;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int v : mask_to_indices(closure)) {
            const NodeMask add = g.parents(v) & ~closure;
            if (add != 0) {
                closure |= add;
                grew = true;
            }
        }
    }
    return closure & ~targets;
}

std::vector<std::string> ancestor_labels(const Dag& g, const std::vector<std::string>& targets) {
    const NodeMask t = g.nodes().mask_of(targets);
    return g.nodes().labels_of(ancestors_of(g, t));
}

bool d_separated(const Dag& g, int a, int b, NodeMask cond) {
    const int n = g.node_count();
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("node index out of range");
    if (a == b) throw std::invalid_argument("d-separation endpoints must differ");
    if (mask_has(cond, a) || mask_has(cond, b))
        throw std::invalid_argument("endpoint inside conditioning set");

    // Ancestral closure of {a,b} union cond, then moralize within it.
    const NodeMask seeds = mask_bit(a) | mask_bit(b) | cond;
    const NodeMask rel = seeds | ancestors_of(g, seeds);

    std::vector<NodeMask> moral(static_cast<std::size_t>(n), 0);
    for (int v : mask_to_indices(rel))
        moral[static_cast<std::size_t>(v)] = (g.parents(v) | g.children(v)) & rel;
    for (int v : mask_to_indices(rel)) {
        const NodeMask par = g.parents(v) & rel;
        for (int p : mask_to_indices(par))
            moral[static_cast<std::size_t>(p)] |= par & ~mask_bit(p);
    }

    NodeMask visited = mask_bit(a);
    NodeMask frontier = visited;
    while (frontier != 0) {
        NodeMask next = 0;
        for (int v : mask_to_indices(frontier)) next |= moral[static_cast<std::size_t>(v)];
        next &= rel & ~visited & ~cond;
        if (mask_has(next, b)) return false;
        visited |= next;
        frontier = next;
    }
    return true;
}

std::vector<VConfig> v_configurations(const Skeleton& s) {
    std::vector<VConfig> out;
    const int n = s.node_count();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (s.adjacent(i, j)) continue;
            const NodeMask common = s.neighbors(i) & s.neighbors(j);
            for (int k : mask_to_indices(common)) out.push_back(VConfig{i, k, j});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Pattern dag_to_pattern(const Dag& g) {
    Skeleton sk = g.skeleton();
    std::vector<VConfig> colliders;
    for (const VConfig& vc : v_configurations(sk))
        if (g.has_edge(vc.i, vc.k) && g.has_edge(vc.j, vc.k)) colliders.push_back(vc);
    return Pattern{std::move(sk), std::move(colliders)};
}

bool markov_equivalent(const Dag& g1, const Dag& g2) {
    if (!(g1.nodes() == g2.nodes())) throw std::invalid_argument("node-set mismatch");
    return dag_to_pattern(g1) == dag_to_pattern(g2);
}

std::vector<Dag> enumerate_dags_with_skeleton(const Skeleton& s, int max_edges) {
    const int m = s.edge_count();
    if (m > max_edges)
        throw guard_error("orientation enumeration over " + std::to_string(m) +
                          " edges exceeds guard of " + std::to_string(max_edges));
    std::vector<Dag> out;
    std::vector<std::pair<int, int>> oriented(static_cast<std::size_t>(m));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        for (int e = 0; e < m; ++e) {
            const auto [a, b] = s.edges()[static_cast<std::size_t>(e)];
            oriented[static_cast<std::size_t>(e)] =
                ((mask >> e) & 1u) != 0 ? std::make_pair(a, b) : std::make_pair(b, a);
        }
        if (edges_acyclic(s.node_count(), oriented)) out.emplace_back(s.nodes(), oriented);
    }
    return out;
}

}  // namespace causal
