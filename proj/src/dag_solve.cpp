#include "causal/dag_solve.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace causal {

namespace {

constexpr std::int8_t kUnset = -1;

// Backtracking search over edge orientations with propagation to a fixpoint.
class Solver {
public:
    Solver(const OrientationModel& model, std::size_t limit)
        : model_(model), limit_(limit), n_(model.skeleton.node_count()) {
        values_.assign(model_.skeleton.edges().size(), kUnset);
        children_.assign(static_cast<std::size_t>(n_), 0);
    }

    // Returns solutions in deterministic search order; fills conflict notes
    // when none exist.
    Enumeration run(bool stop_at_first) {
        Enumeration out;
        for (const auto& [lit, src] : model_.units) {
            if (!assign(lit.edge, lit.toward_high ? 1 : 0)) {
                note_conflict("collider " + render_vconfig(src, model_.skeleton.nodes()) +
                              " contradicts an earlier constraint");
                return out;
            }
        }
        search(stop_at_first, out);
        return out;
    }

    std::vector<std::string> take_conflict() { return std::move(conflict_); }

    int free_edge_count() const {
        int fixed = 0;
        std::vector<bool> seen(values_.size(), false);
        for (const auto& [lit, src] : model_.units)
            if (!seen[static_cast<std::size_t>(lit.edge)]) {
                seen[static_cast<std::size_t>(lit.edge)] = true;
                ++fixed;
            }
        return static_cast<int>(values_.size()) - fixed;
    }

private:
    struct Trail {
        std::size_t depth;
    };

    bool reachable(int from, int to) const {
        NodeMask visited = mask_bit(from);
        NodeMask frontier = visited;
        while (frontier != 0) {
            NodeMask next = 0;
            for (int v : mask_to_indices(frontier)) next |= children_[static_cast<std::size_t>(v)];
            next &= ~visited;
            if (mask_has(next, to)) return true;
            visited |= next;
            frontier = next;
        }
        return false;
    }

    // value 1 orients low->high. Fails when contradicting a set value or
    // closing a directed cycle.
    bool assign(int edge, std::int8_t value) {
        auto& slot = values_[static_cast<std::size_t>(edge)];
        if (slot != kUnset) return slot == value;
        const auto [lo, hi] = model_.skeleton.edges()[static_cast<std::size_t>(edge)];
        const int tail = value == 1 ? lo : hi;
        const int head = value == 1 ? hi : lo;
        if (reachable(head, tail)) {
            note_conflict("orienting " + model_.skeleton.nodes().label(tail) + " -> " +
                          model_.skeleton.nodes().label(head) + " closes a directed cycle");
            return false;
        }
        slot = value;
        children_[static_cast<std::size_t>(tail)] |= mask_bit(head);
        trail_.push_back(edge);
        return true;
    }

    void undo_to(std::size_t depth) {
        while (trail_.size() > depth) {
            const int edge = trail_.back();
            trail_.pop_back();
            const auto [lo, hi] = model_.skeleton.edges()[static_cast<std::size_t>(edge)];
            auto& slot = values_[static_cast<std::size_t>(edge)];
            const int tail = slot == 1 ? lo : hi;
            const int head = slot == 1 ? hi : lo;
            children_[static_cast<std::size_t>(tail)] &= ~mask_bit(head);
            slot = kUnset;
        }
    }

    std::int8_t literal_state(const OrientationModel::Literal& lit) const {
        const std::int8_t v = values_[static_cast<std::size_t>(lit.edge)];
        if (v == kUnset) return kUnset;
        return static_cast<std::int8_t>((v == 1) == lit.toward_high ? 1 : 0);
    }

    // Propagate clause implications and cycle avoidance to a fixpoint.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& clause : model_.clauses) {
                const std::int8_t sa = literal_state(clause.a);
                const std::int8_t sb = literal_state(clause.b);
                if (sa == 1 && sb == 1) {
                    note_conflict("non-collider " +
                                  render_vconfig(clause.source, model_.skeleton.nodes()) +
                                  " oriented as a collider");
                    return false;
                }
                if (sa == 1 && sb == kUnset) {
                    if (!assign(clause.b.edge, clause.b.toward_high ? 0 : 1)) return false;
                    changed = true;
                } else if (sb == 1 && sa == kUnset) {
                    if (!assign(clause.a.edge, clause.a.toward_high ? 0 : 1)) return false;
                    changed = true;
                }
            }
            for (std::size_t e = 0; e < values_.size(); ++e) {
                if (values_[e] != kUnset) continue;
                const auto [lo, hi] = model_.skeleton.edges()[e];
                const bool lo_reaches_hi = reachable(lo, hi);
                const bool hi_reaches_lo = reachable(hi, lo);
                if (lo_reaches_hi && hi_reaches_lo) {
                    note_conflict("both orientations of " + model_.skeleton.nodes().label(lo) +
                                  " -- " + model_.skeleton.nodes().label(hi) + " close cycles");
                    return false;
                }
                if (lo_reaches_hi) {
                    if (!assign(static_cast<int>(e), 1)) return false;
                    changed = true;
                } else if (hi_reaches_lo) {
                    if (!assign(static_cast<int>(e), 0)) return false;
                    changed = true;
                }
            }
        }
        return true;
    }

    bool search(bool stop_at_first, Enumeration& out) {
        const std::size_t depth = trail_.size();
        if (!propagate()) {
            undo_to(depth);
            return false;
        }
        int branch_edge = -1;
        for (std::size_t e = 0; e < values_.size(); ++e)
            if (values_[e] == kUnset) {
                branch_edge = static_cast<int>(e);
                break;
            }
        if (branch_edge < 0) {
            emit(out);
            undo_to(depth);
            return stop_at_first || out.truncated;
        }
        for (std::int8_t value : {std::int8_t{1}, std::int8_t{0}}) {
            const std::size_t mark = trail_.size();
            if (assign(branch_edge, value)) {
                if (search(stop_at_first, out)) {
                    undo_to(depth);
                    return true;
                }
            }
            undo_to(mark);
        }
        undo_to(depth);
        return false;
    }

    void emit(Enumeration& out) {
        if (out.solutions.size() >= limit_) {
            out.truncated = true;
            return;
        }
        std::vector<std::pair<int, int>> edges;
        edges.reserve(values_.size());
        for (std::size_t e = 0; e < values_.size(); ++e) {
            const auto [lo, hi] = model_.skeleton.edges()[e];
            edges.emplace_back(values_[e] == 1 ? std::make_pair(lo, hi) : std::make_pair(hi, lo));
        }
        Dag dag(model_.skeleton.nodes(), std::move(edges));
        out.solutions.push_back(Solution{std::move(dag), {}});
        out.solutions.back().layers = layer_numbering(out.solutions.back().dag);
    }

    static std::vector<int> layer_numbering(const Dag& dag) {
        const int n = dag.node_count();
        std::vector<int> layer(static_cast<std::size_t>(n), 0);
        // Edges sorted ascending is not a topological order in general; relax
        // until fixed point (n iterations bound the longest path).
        for (int pass = 0; pass < n; ++pass) {
            bool changed = false;
            for (auto [tail, head] : dag.edges()) {
                if (layer[static_cast<std::size_t>(head)] <
                    layer[static_cast<std::size_t>(tail)] + 1) {
                    layer[static_cast<std::size_t>(head)] =
                        layer[static_cast<std::size_t>(tail)] + 1;
                    changed = true;
                }
            }
            if (!changed) break;
        }
        return layer;
    }

    void note_conflict(std::string msg) {
        conflict_.clear();
        conflict_.push_back(std::move(msg));
    }

    const OrientationModel& model_;
    std::size_t limit_;
    int n_;
    std::vector<std::int8_t> values_;
    std::vector<NodeMask> children_;
    std::vector<int> trail_;
    std::vector<std::string> conflict_;
};

}  // namespace

int OrientationModel::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    const auto& edges = skeleton.edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(a, b));
    if (it == edges.end() || *it != std::make_pair(a, b))
        throw std::invalid_argument("pair is not a skeleton edge");
    return static_cast<int>(it - edges.begin());
}

OrientationModel build_model(const Skeleton& skeleton,
                             const std::vector<VConfigAssignment>& assignments) {
    OrientationModel model{skeleton, {}, {}, false, {}};

    // required orientation per edge so far: -1 none, else 0/1
    std::vector<std::int8_t> fixed(skeleton.edges().size(), kUnset);
    auto toward = [&](int endpoint, int centre) {
        const int e = model.edge_index(endpoint, centre);
        return OrientationModel::Literal{e, centre == std::max(endpoint, centre)};
    };

    for (const VConfigAssignment& a : assignments) {
        if (!skeleton.adjacent(a.vc.i, a.vc.k) || !skeleton.adjacent(a.vc.j, a.vc.k) ||
            skeleton.adjacent(a.vc.i, a.vc.j))
            throw std::invalid_argument("assignment does not reference a v-configuration");
        if (a.label == VLabel::Collider) {
            for (const auto& lit : {toward(a.vc.i, a.vc.k), toward(a.vc.j, a.vc.k)}) {
                auto& slot = fixed[static_cast<std::size_t>(lit.edge)];
                const std::int8_t want = lit.toward_high ? 1 : 0;
                if (slot != kUnset && slot != want) {
                    model.trivially_infeasible = true;
                    model.conflict.push_back(
                        "edge " + std::to_string(lit.edge) + " forced both ways by collider " +
                        render_vconfig(a.vc, skeleton.nodes()));
                }
                slot = want;
                model.units.emplace_back(lit, a.vc);
            }
        } else if (a.label == VLabel::NonCollider) {
            model.clauses.push_back(OrientationModel::NotBoth{toward(a.vc.i, a.vc.k),
                                                              toward(a.vc.j, a.vc.k), a.vc});
        }
    }

    // A non-collider clause with both literals already fixed true is a
    // build-time contradiction too.
    for (const auto& clause : model.clauses) {
        const auto sa = fixed[static_cast<std::size_t>(clause.a.edge)];
        const auto sb = fixed[static_cast<std::size_t>(clause.b.edge)];
        if (sa != kUnset && sb != kUnset && (sa == 1) == clause.a.toward_high &&
            (sb == 1) == clause.b.toward_high) {
            model.trivially_infeasible = true;
            model.conflict.push_back("non-collider " +
                                     render_vconfig(clause.source, skeleton.nodes()) +
                                     " contradicts collider fixings");
        }
    }
    return model;
}

SolveResult solve_one(const OrientationModel& model) {
    if (model.trivially_infeasible) return SolveResult{std::nullopt, model.conflict};
    Solver solver(model, 1);
    Enumeration found = solver.run(/*stop_at_first=*/true);
    if (found.solutions.empty()) return SolveResult{std::nullopt, solver.take_conflict()};
    return SolveResult{std::move(found.solutions.front()), {}};
}

Enumeration enumerate_all(const OrientationModel& model, std::size_t limit, int max_free_edges) {
    if (model.trivially_infeasible) return Enumeration{};
    Solver solver(model, limit);
    if (solver.free_edge_count() > max_free_edges)
        throw guard_error("enumeration over " + std::to_string(solver.free_edge_count()) +
                          " free edges exceeds guard of " + std::to_string(max_free_edges));
    return solver.run(/*stop_at_first=*/false);
}

bool satisfies(const OrientationModel& model, const Dag& dag) {
    if (!(dag.skeleton() == model.skeleton)) return false;
    auto oriented_toward_high = [&](int edge) {
        const auto [lo, hi] = model.skeleton.edges()[static_cast<std::size_t>(edge)];
        return dag.has_edge(lo, hi);
    };
    for (const auto& [lit, src] : model.units)
        if (oriented_toward_high(lit.edge) != lit.toward_high) return false;
    for (const auto& clause : model.clauses)
        if (oriented_toward_high(clause.a.edge) == clause.a.toward_high &&
            oriented_toward_high(clause.b.edge) == clause.b.toward_high)
            return false;
    return true;
}

std::string model_to_dimacs(const OrientationModel& model) {
    std::ostringstream os;
    const NodeSet& nodes = model.skeleton.nodes();
    for (std::size_t e = 0; e < model.skeleton.edges().size(); ++e) {
        const auto [lo, hi] = model.skeleton.edges()[e];
        os << "c var " << e + 1 << " : edge " << nodes.label(lo) << " -- " << nodes.label(hi)
           << " (positive = " << nodes.label(lo) << " -> " << nodes.label(hi) << ")\n";
    }
    os << "p cnf " << model.skeleton.edges().size() << " "
       << model.units.size() + model.clauses.size() << "\n";
    auto lit = [](const OrientationModel::Literal& l, bool negate) {
        const int v = l.edge + 1;
        return (l.toward_high != negate) ? v : -v;
    };
    for (const auto& [unit, src] : model.units) os << lit(unit, false) << " 0\n";
    for (const auto& clause : model.clauses)
        os << lit(clause.a, true) << " " << lit(clause.b, true) << " 0\n";
    os << "c plus: orientation must be acyclic (layered assignment exists)\n";
    return os.str();
}

}  // namespace causal
