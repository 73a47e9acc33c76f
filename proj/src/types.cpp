#include "causal/types.hpp"

namespace causal {

std::vector<int> mask_to_indices(NodeMask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(mask_count(m)));
    while (m != 0) {
        const int i = std::countr_zero(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

NodeMask indices_to_mask(const std::vector<int>& idx) {
    NodeMask m = 0;
    for (int i : idx) m |= mask_bit(i);
    return m;
}

bool card_lex_less(NodeMask a, NodeMask b) {
    const int ca = mask_count(a);
    const int cb = mask_count(b);
    if (ca != cb) return ca < cb;
    if (a == b) return false;
    // The first differing element decides; it is the lowest bit of a ^ b and
    // belongs to exactly one side.
    const NodeMask diff = a ^ b;
    const NodeMask low = diff & (~diff + 1);
    return (a & low) != 0;
}

}  // namespace causal
