#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mla/rational.hpp"

namespace mla {

// Dense node index; the root is always 0.
using NodeId = std::size_t;
using Seats = std::int64_t;

inline constexpr NodeId kRoot = 0;

// Unvalidated node record as it arrives from a file or a generator.
struct RawNode {
    std::int64_t id = 0;
    std::optional<std::int64_t> parent;
    Rational weight;
};

// Children of a node are ordered by their position in `nodes`.
struct RawInstance {
    std::vector<RawNode> nodes;
};

enum class InstanceErrorKind {
    NonTree,
    WeightOutOfRange,
    ChildrenWeightsNotNormalized,
};

const char* to_string(InstanceErrorKind kind);

struct InstanceError {
    InstanceErrorKind kind;
    std::optional<std::int64_t> node;
    // Exact sibling weight sum, set for ChildrenWeightsNotNormalized.
    std::optional<Rational> sum;
    std::string message;
};

// Empty result means the raw instance is a valid entitlement tree.
std::vector<InstanceError> validate_instance(const RawInstance& raw);

class InvalidInstance : public std::runtime_error {
public:
    explicit InvalidInstance(std::vector<InstanceError> errors);
    const std::vector<InstanceError>& errors() const { return errors_; }

private:
    std::vector<InstanceError> errors_;
};

// Validated, immutable entitlement tree. Relative entitlements and the
// per-ancestor ratios R_i / R_a are computed once at construction.
class Instance {
public:
    // Throws InvalidInstance listing every violated invariant.
    static Instance from_raw(const RawInstance& raw);

    // parents[0] must be empty; children are ordered by id.
    static Instance from_parents(const std::vector<std::optional<NodeId>>& parents,
                                 std::vector<Rational> weights);

    std::size_t size() const { return parent_.size(); }
    std::optional<NodeId> parent(NodeId i) const { return parent_[i]; }
    std::span<const NodeId> children(NodeId i) const { return children_[i]; }
    bool is_leaf(NodeId i) const { return children_[i].empty(); }
    const Rational& weight(NodeId i) const { return weight_[i]; }
    const Rational& relative_entitlement(NodeId i) const { return relative_[i]; }
    std::size_t depth(NodeId i) const { return depth_[i]; }
    std::size_t height() const { return height_; }

    // A(i), ordered root first. A(0) = {0}.
    std::span<const NodeId> ancestors(NodeId i) const { return ancestors_[i]; }
    // R_i / R_a for each a in ancestors(i), same order.
    std::span<const Rational> ancestor_ratios(NodeId i) const { return ancestor_ratios_[i]; }

    // Breadth-first order from the root; every node appears after its parent.
    std::span<const NodeId> top_down() const { return top_down_; }

    RawInstance to_raw() const;

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.parent_ == b.parent_ && a.children_ == b.children_ && a.weight_ == b.weight_;
    }

private:
    Instance() = default;

    std::vector<std::optional<NodeId>> parent_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<Rational> weight_;
    std::vector<Rational> relative_;
    std::vector<std::size_t> depth_;
    std::vector<std::vector<NodeId>> ancestors_;
    std::vector<std::vector<Rational>> ancestor_ratios_;
    std::vector<NodeId> top_down_;
    std::size_t height_ = 0;
};

inline const Rational& relative_entitlement(const Instance& inst, NodeId i) {
    return inst.relative_entitlement(i);
}

// R_i * h.
Rational strict_quota(const Instance& inst, NodeId i, Seats h);

// Seat counts per node for house size h.
struct Allocation {
    Seats h = 0;
    std::vector<Seats> seats;

    static Allocation zeros(std::size_t n) { return Allocation{0, std::vector<Seats>(n, 0)}; }

    friend bool operator==(const Allocation&, const Allocation&) = default;
    friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

// V_0 = h and every non-leaf holds the sum of its children.
bool is_flow_conserving(const Instance& inst, const Allocation& alloc);

}  // namespace mla
