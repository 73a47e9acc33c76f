#ifndef CAUSAL_TYPES_HPP
#define CAUSAL_TYPES_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace causal {

// Node subsets are bitmasks over node indices. Everything downstream of the
// subset-enumeration guards fits comfortably in 32 bits.
using NodeMask = std::uint32_t;

inline constexpr int kMaxMaskNodes = 32;

// Exhaustive-enumeration guards (node counts / edge counts).
inline constexpr int kSubsetGuardNodes = 12;
inline constexpr int kOrientationGuardEdges = 20;
inline constexpr int kSolverGuardFreeEdges = 24;
inline constexpr int kPermutationGuardNodes = 7;

inline constexpr NodeMask mask_bit(int i) { return NodeMask{1} << i; }
inline constexpr bool mask_has(NodeMask m, int i) { return ((m >> i) & NodeMask{1}) != 0; }
inline int mask_count(NodeMask m) { return std::popcount(m); }

std::vector<int> mask_to_indices(NodeMask m);
NodeMask indices_to_mask(const std::vector<int>& idx);

// Order on same-universe masks: by cardinality, then lexicographic on the
// sorted element lists. This is the enumeration and storage order used for
// conditioning sets throughout.
bool card_lex_less(NodeMask a, NodeMask b);

// Visits every subset of `universe` in card_lex order. The callback returns
// false to stop early; the function mirrors that.
template <typename Fn>
bool for_each_subset(NodeMask universe, Fn&& fn) {
    std::vector<int> elems = mask_to_indices(universe);
    const int m = static_cast<int>(elems.size());
    for (int k = 0; k <= m; ++k) {
        std::vector<int> pick(k);
        for (int t = 0; t < k; ++t) pick[t] = t;
        while (true) {
            NodeMask subset = 0;
            for (int t = 0; t < k; ++t) subset |= mask_bit(elems[pick[t]]);
            if (!fn(subset)) return false;
            // advance combination
            int pos = k - 1;
            while (pos >= 0 && pick[pos] == m - k + pos) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int t = pos + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    return true;
}

class guard_error : public std::runtime_error {
public:
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class degenerate_covariance : public std::runtime_error {
public:
    degenerate_covariance() : std::runtime_error("degenerate covariance") {}
};

}  // namespace causal

#endif  // CAUSAL_TYPES_HPP
