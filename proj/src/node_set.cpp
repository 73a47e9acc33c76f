#include "causal/node_set.hpp"

#include <stdexcept>

namespace causal {

NodeSet::NodeSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) throw std::invalid_argument("empty node label");
        auto [it, inserted] = index_.emplace(labels_[i], static_cast<int>(i));
        if (!inserted) throw std::invalid_argument("duplicate node label: " + labels_[i]);
    }
}

int NodeSet::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw std::invalid_argument("unknown node label: " + label);
    return it->second;
}

const std::string& NodeSet::label(int idx) const {
    if (idx < 0 || idx >= size()) throw std::invalid_argument("node index out of range");
    return labels_[static_cast<std::size_t>(idx)];
}

NodeMask NodeSet::full_mask() const {
    if (size() >= kMaxMaskNodes) throw guard_error("node count exceeds mask capacity");
    return (NodeMask{1} << size()) - 1;
}

NodeMask NodeSet::mask_of(const std::vector<std::string>& labels) const {
    NodeMask m = 0;
    for (const auto& l : labels) m |= mask_bit(index_of(l));
    return m;
}

std::vector<std::string> NodeSet::labels_of(NodeMask m) const {
    std::vector<std::string> out;
    for (int i : mask_to_indices(m)) out.push_back(label(i));
    return out;
}

std::string NodeSet::render(NodeMask m) const {
    std::string out;
    for (int i : mask_to_indices(m)) {
        if (!out.empty()) out += ",";
        out += label(i);
    }
    return out;
}

NodeSet numbered_nodes(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return NodeSet(std::move(labels));
}

}  // namespace causal
