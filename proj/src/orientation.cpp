#include "causal/orientation.hpp"

#include <stdexcept>

namespace causal {

const char* vlabel_name(VLabel label) {
    switch (label) {
        case VLabel::Collider: return "collider";
        case VLabel::NonCollider: return "non-collider";
        case VLabel::Unassigned: return "unassigned";
    }
    return "?";
}

std::vector<VConfigAssignment> orient_vconfigs(const Skeleton& skeleton, const SepsetIndex& index,
                                               const CiOracle& oracle) {
    std::vector<VConfigAssignment> out;
    for (const VConfig& vc : v_configurations(skeleton)) {
        const auto* sepsets = index.sepsets(vc.i, vc.j);
        if (sepsets == nullptr || sepsets->empty())
            throw std::invalid_argument("v-configuration endpoints have no separating set");

        VConfigAssignment assignment{vc, VLabel::Unassigned, std::nullopt};

        // Collider clause, reduced to the recorded separating sets: any
        // C subset of V \ {i,j,k} with (i,j) separated by C but not C u {k}
        // must itself be a separating set of (i,j) that excludes k.
        bool centre_in_all = true;
        for (NodeMask c : *sepsets) {
            if (mask_has(c, vc.k)) continue;
            centre_in_all = false;
            if (!oracle.independent(vc.i, vc.j, c | mask_bit(vc.k))) {
                assignment.label = VLabel::Collider;
                assignment.witness_cond = c;
                break;
            }
        }
        if (assignment.label == VLabel::Unassigned && centre_in_all)
            assignment.label = VLabel::NonCollider;

        // The clauses cannot both fire: a collider witness excludes the centre.
        if (assignment.label == VLabel::Collider && centre_in_all)
            throw std::logic_error("orientation rule fired both clauses");
        out.push_back(assignment);
    }
    return out;
}

bool respects_assignments(const Dag& g, const std::vector<VConfigAssignment>& assignments) {
    for (const VConfigAssignment& a : assignments) {
        const bool is_collider = g.has_edge(a.vc.i, a.vc.k) && g.has_edge(a.vc.j, a.vc.k);
        if (a.label == VLabel::Collider && !is_collider) return false;
        if (a.label == VLabel::NonCollider && is_collider) return false;
    }
    return true;
}

}  // namespace causal
