#ifndef CAUSAL_NODE_SET_HPP
#define CAUSAL_NODE_SET_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "causal/types.hpp"

namespace causal {

// Ordered universe of node labels. The construction order is the canonical
// node order everywhere (masks, sorted outputs, file formats).
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    bool contains(const std::string& label) const { return index_.count(label) > 0; }

    // Throws std::invalid_argument on an unknown label.
    int index_of(const std::string& label) const;

    const std::string& label(int idx) const;
    const std::vector<std::string>& labels() const { return labels_; }

    NodeMask full_mask() const;
    NodeMask mask_of(const std::vector<std::string>& labels) const;
    std::vector<std::string> labels_of(NodeMask m) const;

    // Comma-joined labels of a mask, in node order.
    std::string render(NodeMask m) const;

    bool operator==(const NodeSet& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

// "1".."n" convenience universe.
NodeSet numbered_nodes(int n);

}  // namespace causal

#endif  // CAUSAL_NODE_SET_HPP
