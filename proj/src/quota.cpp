#include "mla/quota.hpp"

#include <stdexcept>
#include <string>

namespace mla {

const char* to_string(QuotaMode mode) {
    switch (mode) {
        case QuotaMode::AllAncestors: return "all";
        case QuotaMode::RootOnly: return "root";
    }
    return "unknown";
}

QuotaBounds quota_bounds(const Instance& inst, const Allocation& alloc, NodeId i, QuotaMode mode) {
    if (i >= inst.size() || alloc.seats.size() != inst.size()) {
        throw std::invalid_argument("quota_bounds: node or allocation does not match the instance");
    }
    auto ancestors = inst.ancestors(i);
    auto ratios = inst.ancestor_ratios(i);
    const std::size_t count = mode == QuotaMode::RootOnly ? 1 : ancestors.size();

    QuotaBounds b;
    b.node = i;
    BigInt lower;
    BigInt upper;
    for (std::size_t k = 0; k < count; ++k) {
        const NodeId a = ancestors[k];
        const Seats va = a == kRoot ? alloc.h : alloc.seats[a];
        BigInt lo = floor_scaled(ratios[k], va);
        BigInt hi = ceil_scaled(ratios[k], va);
        if (k == 0 || lo > lower) {
            lower = std::move(lo);
            b.binding_lower_ancestor = a;
        }
        if (k == 0 || hi < upper) {
            upper = std::move(hi);
            b.binding_upper_ancestor = a;
        }
    }
    b.lower = static_cast<Seats>(lower);
    b.upper = static_cast<Seats>(upper);
    return b;
}

QuotaReport check_allocation(const Instance& inst, const Allocation& alloc, QuotaMode mode) {
    if (alloc.seats.size() != inst.size()) {
        throw std::invalid_argument("allocation has " + std::to_string(alloc.seats.size()) +
                                    " entries for an instance with " + std::to_string(inst.size()) +
                                    " nodes");
    }
    QuotaReport report;
    report.mode = mode;
    report.nodes.reserve(inst.size());

    if (alloc.seats[kRoot] != alloc.h) {
        report.flow_violations.push_back({kRoot, alloc.seats[kRoot], alloc.h});
    }
    for (NodeId i = 0; i < inst.size(); ++i) {
        if (!inst.is_leaf(i)) {
            Seats sum = 0;
            for (NodeId c : inst.children(i)) sum += alloc.seats[c];
            if (sum != alloc.seats[i]) report.flow_violations.push_back({i, alloc.seats[i], sum});
        }
        NodeQuota q;
        q.bounds = quota_bounds(inst, alloc, i, mode);
        q.seats = alloc.seats[i];
        q.lower_violated = q.seats < q.bounds.lower;
        q.upper_violated = q.seats > q.bounds.upper;
        report.lower_violation_count += q.lower_violated ? 1 : 0;
        report.upper_violation_count += q.upper_violated ? 1 : 0;
        report.nodes.push_back(q);
    }
    return report;
}

std::vector<NodeId> QuotaReport::lower_violators() const {
    std::vector<NodeId> out;
    for (const auto& q : nodes) {
        if (q.lower_violated) out.push_back(q.bounds.node);
    }
    return out;
}

std::vector<NodeId> QuotaReport::upper_violators() const {
    std::vector<NodeId> out;
    for (const auto& q : nodes) {
        if (q.upper_violated) out.push_back(q.bounds.node);
    }
    return out;
}

}  // namespace mla
