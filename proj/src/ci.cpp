#include "causal/ci.hpp"

#include <stdexcept>

namespace causal {

CiQuery CiQuery::make(int a, int b, NodeMask cond) {
    if (a == b) throw std::invalid_argument("query endpoints must differ");
    if (a > b) std::swap(a, b);
    if (mask_has(cond, a) || mask_has(cond, b))
        throw std::invalid_argument("query endpoint inside conditioning set");
    return CiQuery{a, b, cond};
}

std::string render_query(const CiQuery& q, const NodeSet& nodes) {
    return nodes.label(q.i) + " _||_ " + nodes.label(q.j) + " | " + nodes.render(q.cond);
}

bool CiOracle::independent(int a, int b, NodeMask cond) const {
    if (a < 0 || a >= nodes_.size() || b < 0 || b >= nodes_.size())
        throw std::invalid_argument("query node outside oracle domain");
    if ((cond & ~nodes_.full_mask()) != 0)
        throw std::invalid_argument("conditioning set outside oracle domain");
    return query_impl(CiQuery::make(a, b, cond));
}

void CiTable::add(const CiQuery& q) {
    if (q.j >= nodes_.size() || (q.cond & ~nodes_.full_mask()) != 0)
        throw std::invalid_argument("statement references node outside table universe");
    independencies_.insert(q);
}

bool CachedOracle::query_impl(const CiQuery& q) const {
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(q);
        if (it != memo_.end()) {
            ++hits_;
            return it->second;
        }
    }
    const bool verdict = inner_->independent(q);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = memo_.emplace(q, verdict);
    if (inserted) ++misses_;
    else ++hits_;
    return it->second;
}

std::uint64_t CachedOracle::hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

std::uint64_t CachedOracle::misses() const {
    std::lock_guard lock(mutex_);
    return misses_;
}

CiTable markov_closure_table(const Dag& g, const std::vector<CiQuery>& extra, int max_nodes) {
    const int n = g.node_count();
    if (n > max_nodes)
        throw guard_error("closure over " + std::to_string(n) + " nodes exceeds guard of " +
                          std::to_string(max_nodes));
    CiTable table(g.nodes());
    const NodeMask all = g.nodes().full_mask();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const NodeMask universe = all & ~mask_bit(i) & ~mask_bit(j);
            for_each_subset(universe, [&](NodeMask c) {
                if (d_separated(g, i, j, c)) table.add(i, j, c);
                return true;
            });
        }
    }
    for (const CiQuery& q : extra) table.add(q);
    return table;
}

}  // namespace causal
