#ifndef CAUSAL_ORIENTATION_HPP
#define CAUSAL_ORIENTATION_HPP

#include <optional>
#include <vector>

#include "causal/sepsets.hpp"

namespace causal {

enum class VLabel { Collider, NonCollider, Unassigned };

const char* vlabel_name(VLabel label);

struct VConfigAssignment {
    VConfig vc;
    VLabel label = VLabel::Unassigned;
    // Collider witness: a separating set C of (i,j) excluding the centre k
    // with (i,j) dependent given C u {k}.
    std::optional<NodeMask> witness_cond;
};

// The orientation rule over the discovered skeleton:
//   Collider     iff some C excluding k separates (i,j) while C u {k} does not;
//   NonCollider  iff every separating set of (i,j) contains k;
//   Unassigned   otherwise.
// The two clauses are mutually exclusive by construction (a collider witness
// is a separating set without k).
std::vector<VConfigAssignment> orient_vconfigs(const Skeleton& skeleton, const SepsetIndex& index,
                                               const CiOracle& oracle);

// True iff g realizes every Collider assignment as a collider and no
// NonCollider assignment as a collider. Unassigned entries are free.
bool respects_assignments(const Dag& g, const std::vector<VConfigAssignment>& assignments);

}  // namespace causal

#endif  // CAUSAL_ORIENTATION_HPP
