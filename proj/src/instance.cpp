#include "mla/instance.hpp"

#include <algorithm>
#include <deque>

namespace mla {

const char* to_string(InstanceErrorKind kind) {
    switch (kind) {
        case InstanceErrorKind::NonTree: return "NonTree";
        case InstanceErrorKind::WeightOutOfRange: return "WeightOutOfRange";
        case InstanceErrorKind::ChildrenWeightsNotNormalized: return "ChildrenWeightsNotNormalized";
    }
    return "Unknown";
}

namespace {

std::string join_messages(const std::vector<InstanceError>& errors) {
    std::string text = "invalid instance";
    for (const auto& e : errors) {
        text += "\n  ";
        text += to_string(e.kind);
        text += ": ";
        text += e.message;
    }
    return text;
}

InstanceError non_tree(std::int64_t node, std::string message) {
    return {InstanceErrorKind::NonTree, node, std::nullopt, std::move(message)};
}

}  // namespace

InvalidInstance::InvalidInstance(std::vector<InstanceError> errors)
    : std::runtime_error(join_messages(errors)), errors_(std::move(errors)) {}

std::vector<InstanceError> validate_instance(const RawInstance& raw) {
    std::vector<InstanceError> errors;
    const auto n = static_cast<std::int64_t>(raw.nodes.size());
    if (n == 0) {
        errors.push_back({InstanceErrorKind::NonTree, std::nullopt, std::nullopt, "instance has no nodes"});
        return errors;
    }

    // position[id] = index into raw.nodes
    std::vector<std::int64_t> position(static_cast<std::size_t>(n), -1);
    bool ids_ok = true;
    for (std::size_t k = 0; k < raw.nodes.size(); ++k) {
        const auto id = raw.nodes[k].id;
        if (id < 0 || id >= n) {
            errors.push_back(non_tree(id, "node " + std::to_string(id) + ": id outside 0.." +
                                              std::to_string(n - 1)));
            ids_ok = false;
        } else if (position[static_cast<std::size_t>(id)] >= 0) {
            errors.push_back(non_tree(id, "node " + std::to_string(id) + ": duplicate id"));
            ids_ok = false;
        } else {
            position[static_cast<std::size_t>(id)] = static_cast<std::int64_t>(k);
        }
    }

    bool parents_ok = ids_ok;
    for (const auto& node : raw.nodes) {
        if (!node.parent) {
            if (node.id != 0) {
                errors.push_back(non_tree(node.id, "node " + std::to_string(node.id) +
                                                       ": only node 0 may lack a parent"));
                parents_ok = false;
            }
            continue;
        }
        const auto p = *node.parent;
        if (node.id == 0) {
            errors.push_back(non_tree(0, "node 0 is the root and must not have a parent"));
            parents_ok = false;
        } else if (p < 0 || p >= n) {
            errors.push_back(non_tree(node.id, "node " + std::to_string(node.id) + ": parent " +
                                                   std::to_string(p) + " does not exist"));
            parents_ok = false;
        } else if (p == node.id) {
            errors.push_back(non_tree(node.id, "node " + std::to_string(node.id) + " is its own parent"));
            parents_ok = false;
        }
    }

    const Rational one(1);
    for (const auto& node : raw.nodes) {
        if (node.id == 0) {
            if (node.weight != one) {
                errors.push_back({InstanceErrorKind::WeightOutOfRange, node.id, std::nullopt,
                                  "node 0: root weight must be 1, got " + node.weight.str()});
            }
        } else if (node.weight.sign() <= 0 || node.weight > one) {
            errors.push_back({InstanceErrorKind::WeightOutOfRange, node.id, std::nullopt,
                              "node " + std::to_string(node.id) + ": weight " + node.weight.str() +
                                  " outside (0, 1]"});
        }
    }

    if (!parents_ok) return errors;

    const auto un = static_cast<std::size_t>(n);
    std::vector<std::vector<std::size_t>> children(un);
    for (const auto& node : raw.nodes) {
        if (node.parent) children[static_cast<std::size_t>(*node.parent)].push_back(static_cast<std::size_t>(node.id));
    }

    std::vector<bool> reached(un, false);
    std::deque<std::size_t> queue{0};
    reached[0] = true;
    while (!queue.empty()) {
        auto i = queue.front();
        queue.pop_front();
        for (auto c : children[i]) {
            if (!reached[c]) {
                reached[c] = true;
                queue.push_back(c);
            }
        }
    }
    for (std::size_t i = 0; i < un; ++i) {
        if (!reached[i]) {
            errors.push_back(non_tree(static_cast<std::int64_t>(i),
                                      "node " + std::to_string(i) + " is not reachable from the root (cycle)"));
        }
    }

    for (std::size_t i = 0; i < un; ++i) {
        if (children[i].empty()) continue;
        Rational sum;
        for (auto c : children[i]) sum += raw.nodes[static_cast<std::size_t>(position[c])].weight;
        if (sum != one) {
            errors.push_back({InstanceErrorKind::ChildrenWeightsNotNormalized, static_cast<std::int64_t>(i), sum,
                              "node " + std::to_string(i) + ": children weights sum to " + sum.str()});
        }
    }
    return errors;
}

Instance Instance::from_raw(const RawInstance& raw) {
    auto errors = validate_instance(raw);
    if (!errors.empty()) throw InvalidInstance(std::move(errors));

    const std::size_t n = raw.nodes.size();
    Instance inst;
    inst.parent_.assign(n, std::nullopt);
    inst.children_.assign(n, {});
    inst.weight_.assign(n, Rational(1));
    for (const auto& node : raw.nodes) {
        const auto id = static_cast<NodeId>(node.id);
        inst.weight_[id] = node.weight;
        if (node.parent) {
            const auto p = static_cast<NodeId>(*node.parent);
            inst.parent_[id] = p;
            inst.children_[p].push_back(id);
        }
    }

    inst.relative_.assign(n, Rational(1));
    inst.depth_.assign(n, 0);
    inst.ancestors_.assign(n, {});
    inst.ancestor_ratios_.assign(n, {});
    inst.top_down_.reserve(n);
    inst.ancestors_[kRoot] = {kRoot};
    inst.ancestor_ratios_[kRoot] = {Rational(1)};

    std::deque<NodeId> queue{kRoot};
    while (!queue.empty()) {
        const NodeId i = queue.front();
        queue.pop_front();
        inst.top_down_.push_back(i);
        inst.height_ = std::max(inst.height_, inst.depth_[i]);
        for (NodeId c : inst.children_[i]) {
            inst.relative_[c] = inst.relative_[i] * inst.weight_[c];
            inst.depth_[c] = inst.depth_[i] + 1;
            auto& anc = inst.ancestors_[c];
            anc = i == kRoot ? std::vector<NodeId>{} : inst.ancestors_[i];
            anc.push_back(i);
            auto& ratios = inst.ancestor_ratios_[c];
            ratios.reserve(anc.size());
            for (NodeId a : anc) ratios.push_back(inst.relative_[c] / inst.relative_[a]);
            queue.push_back(c);
        }
    }
    return inst;
}

Instance Instance::from_parents(const std::vector<std::optional<NodeId>>& parents,
                                std::vector<Rational> weights) {
    if (parents.size() != weights.size()) {
        throw std::invalid_argument("parents and weights differ in length");
    }
    RawInstance raw;
    raw.nodes.reserve(parents.size());
    for (std::size_t i = 0; i < parents.size(); ++i) {
        std::optional<std::int64_t> p;
        if (parents[i]) p = static_cast<std::int64_t>(*parents[i]);
        raw.nodes.push_back({static_cast<std::int64_t>(i), p, std::move(weights[i])});
    }
    return from_raw(raw);
}

RawInstance Instance::to_raw() const {
    RawInstance raw;
    raw.nodes.reserve(size());
    // Id order unless some children list is not ascending; then breadth-first
    // order, which keeps every children list intact on re-read.
    bool ascending = true;
    for (const auto& kids : children_) {
        if (!std::is_sorted(kids.begin(), kids.end())) ascending = false;
    }
    std::vector<NodeId> order(top_down_.begin(), top_down_.end());
    if (ascending) std::sort(order.begin(), order.end());
    for (NodeId i : order) {
        std::optional<std::int64_t> p;
        if (parent_[i]) p = static_cast<std::int64_t>(*parent_[i]);
        raw.nodes.push_back({static_cast<std::int64_t>(i), p, weight_[i]});
    }
    return raw;
}

Rational strict_quota(const Instance& inst, NodeId i, Seats h) {
    return inst.relative_entitlement(i) * Rational(h);
}

bool is_flow_conserving(const Instance& inst, const Allocation& alloc) {
    if (alloc.seats.size() != inst.size() || alloc.seats[kRoot] != alloc.h) return false;
    for (NodeId i = 0; i < inst.size(); ++i) {
        if (alloc.seats[i] < 0) return false;
        if (inst.is_leaf(i)) continue;
        Seats sum = 0;
        for (NodeId c : inst.children(i)) sum += alloc.seats[c];
        if (sum != alloc.seats[i]) return false;
    }
    return true;
}

}  // namespace mla
