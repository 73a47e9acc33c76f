#ifndef CAUSAL_CI_HPP
#define CAUSAL_CI_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>
#include <vector>

#include "causal/graph.hpp"
#include "causal/node_set.hpp"
#include "causal/types.hpp"

namespace causal {

// "i independent of j given cond", canonical i < j, endpoints outside cond.
struct CiQuery {
    int i;
    int j;
    NodeMask cond;

    static CiQuery make(int a, int b, NodeMask cond);

    auto operator<=>(const CiQuery&) const = default;
};

struct CiQueryHash {
    std::size_t operator()(const CiQuery& q) const {
        std::uint64_t h = static_cast<std::uint64_t>(q.cond);
        h = h * 0x100000001b3ull ^ static_cast<std::uint64_t>(q.i);
        h = h * 0x100000001b3ull ^ static_cast<std::uint64_t>(q.j);
        return static_cast<std::size_t>(h * 0x9e3779b97f4a7c15ull >> 16);
    }
};

std::string render_query(const CiQuery& q, const NodeSet& nodes);

enum class Capability { Exact, Statistical };

// Source of truth for conditional-independence statements. Queries are
// canonicalized and validated here, so query(i,j,C) == query(j,i,C) for
// every backend.
class CiOracle {
public:
    virtual ~CiOracle() = default;

    const NodeSet& nodes() const { return nodes_; }
    Capability capability() const { return capability_; }

    bool independent(int a, int b, NodeMask cond) const;
    bool independent(const CiQuery& q) const { return independent(q.i, q.j, q.cond); }

protected:
    CiOracle(NodeSet nodes, Capability capability)
        : nodes_(std::move(nodes)), capability_(capability) {}

    virtual bool query_impl(const CiQuery& q) const = 0;

private:
    NodeSet nodes_;
    Capability capability_;
};

// Explicit list of independencies; anything absent is dependent.
class CiTable {
public:
    explicit CiTable(NodeSet nodes) : nodes_(std::move(nodes)) {}

    void add(const CiQuery& q);
    void add(int a, int b, NodeMask cond) { add(CiQuery::make(a, b, cond)); }
    bool contains(const CiQuery& q) const { return independencies_.count(q) > 0; }

    const NodeSet& nodes() const { return nodes_; }
    const std::set<CiQuery>& independencies() const { return independencies_; }

private:
    NodeSet nodes_;
    std::set<CiQuery> independencies_;
};

class DsepOracle : public CiOracle {
public:
    explicit DsepOracle(Dag g) : CiOracle(g.nodes(), Capability::Exact), g_(std::move(g)) {}
    const Dag& dag() const { return g_; }

protected:
    bool query_impl(const CiQuery& q) const override { return d_separated(g_, q.i, q.j, q.cond); }

private:
    Dag g_;
};

class TableOracle : public CiOracle {
public:
    explicit TableOracle(CiTable t) : CiOracle(t.nodes(), Capability::Exact), t_(std::move(t)) {}
    const CiTable& table() const { return t_; }

protected:
    bool query_impl(const CiQuery& q) const override { return t_.contains(q); }

private:
    CiTable t_;
};

// Memoizing read-through wrapper. Verdict-transparent for deterministic
// inner oracles; each distinct canonical query is evaluated at most once.
class CachedOracle : public CiOracle {
public:
    explicit CachedOracle(const CiOracle& inner)
        : CiOracle(inner.nodes(), inner.capability()), inner_(&inner) {}

    std::uint64_t hits() const;
    std::uint64_t misses() const;

protected:
    bool query_impl(const CiQuery& q) const override;

private:
    const CiOracle* inner_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<CiQuery, bool, CiQueryHash> memo_;
    mutable std::uint64_t hits_ = 0;
    mutable std::uint64_t misses_ = 0;
};

// Every (i,j,C) with d_separated(g,i,j,C), plus the given extra statements.
// Materializes 2^(n-2) conditioning sets per pair; guarded.
CiTable markov_closure_table(const Dag& g, const std::vector<CiQuery>& extra = {},
                             int max_nodes = kSubsetGuardNodes);

}  // namespace causal

#endif  // CAUSAL_CI_HPP
