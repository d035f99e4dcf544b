#pragma once

#include <cstddef>
#include <vector>

#include "mla/instance.hpp"

namespace mla {

enum class QuotaMode {
    AllAncestors,
    // Only the root counts as an ancestor: floor(R_i h) / ceil(R_i h).
    RootOnly,
};

const char* to_string(QuotaMode mode);

// LQ_i = max_a floor(R_i / R_a * V_a), UQ_i = min_a ceil(R_i / R_a * V_a).
// The binding ancestor is the one closest to the root among those attaining
// the bound. The root's own seat count is taken to be h.
struct QuotaBounds {
    NodeId node = 0;
    Seats lower = 0;
    Seats upper = 0;
    NodeId binding_lower_ancestor = 0;
    NodeId binding_upper_ancestor = 0;
};

QuotaBounds quota_bounds(const Instance& inst, const Allocation& alloc, NodeId i,
                         QuotaMode mode = QuotaMode::AllAncestors);

struct NodeQuota {
    QuotaBounds bounds;
    Seats seats = 0;
    bool lower_violated = false;
    bool upper_violated = false;
};

// seats differs from expected: for the root expected = h, otherwise the sum
// over children.
struct FlowViolation {
    NodeId node = 0;
    Seats seats = 0;
    Seats expected = 0;
};

struct QuotaReport {
    QuotaMode mode = QuotaMode::AllAncestors;
    std::vector<NodeQuota> nodes;
    std::vector<FlowViolation> flow_violations;
    std::size_t lower_violation_count = 0;
    std::size_t upper_violation_count = 0;

    bool compliant() const {
        return lower_violation_count == 0 && upper_violation_count == 0 && flow_violations.empty();
    }
    std::vector<NodeId> lower_violators() const;
    std::vector<NodeId> upper_violators() const;
};

// Throws std::invalid_argument if the allocation has the wrong length.
QuotaReport check_allocation(const Instance& inst, const Allocation& alloc,
                             QuotaMode mode = QuotaMode::AllAncestors);

}  // namespace mla
