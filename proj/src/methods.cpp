#include "mla/methods.hpp"

#include <string>

namespace mla {

const char* to_string(MethodKind method) {
    switch (method) {
        case MethodKind::Adams: return "adams";
        case MethodKind::Jefferson: return "jefferson";
        case MethodKind::Quota: return "quota";
        case MethodKind::UCQuota: return "ucquota";
    }
    return "unknown";
}

std::optional<MethodKind> parse_method(std::string_view name) {
    for (MethodKind m : kAllMethods) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

NoEligibleChild::NoEligibleChild(MethodKind method, NodeId node)
    : std::logic_error(std::string(to_string(method)) + ": no child of node " + std::to_string(node) +
                       " is eligible for the seat"),
      node_(node) {}

namespace {

// Candidate key k / W_c. Siblings share R_parent, so comparing k / W_c is
// the same as comparing k / R_c.
struct Candidate {
    NodeId node;
    Seats key_seats;
};

bool better(const Instance& inst, const Candidate& a, const Candidate& b, TieBreak) {
    // a.k / W_a < b.k / W_b  <=>  a.k * W_b < b.k * W_a
    auto order = compare_scaled(a.key_seats, inst.weight(b.node), b.key_seats, inst.weight(a.node));
    if (order != 0) return order < 0;
    return a.node < b.node;
}

}  // namespace

void place_seat(const Instance& inst, MethodKind method, Allocation& alloc, std::vector<NodeId>& path,
                TieBreak tie) {
    auto& v = alloc.seats;
    path.clear();
    path.push_back(kRoot);

    // UC threshold t = threshold_seats / R_threshold_node.
    Seats threshold_seats = v[kRoot] + 1;
    NodeId threshold_node = kRoot;

    alloc.h += 1;
    v[kRoot] += 1;
    NodeId i = kRoot;
    while (!inst.is_leaf(i)) {
        const Seats parent_before = v[i] - 1;
        std::optional<Candidate> best;
        for (NodeId c : inst.children(i)) {
            const Seats vc = v[c];
            if (method == MethodKind::Quota) {
                // V_c / W_c < V_i + 1
                const auto& w = inst.weight(c);
                if (w.den() * vc >= w.num() * (parent_before + 1)) continue;
            } else if (method == MethodKind::UCQuota) {
                // V_c / R_c < t
                if (compare_scaled(vc, inst.relative_entitlement(threshold_node), threshold_seats,
                                   inst.relative_entitlement(c)) >= 0) {
                    continue;
                }
            }
            Candidate cand{c, method == MethodKind::Adams ? vc : vc + 1};
            if (!best || better(inst, cand, *best, tie)) best = cand;
        }
        if (!best) throw NoEligibleChild(method, i);

        const NodeId c = best->node;
        if (method == MethodKind::UCQuota &&
            compare_scaled(v[c] + 1, inst.relative_entitlement(threshold_node), threshold_seats,
                           inst.relative_entitlement(c)) < 0) {
            threshold_seats = v[c] + 1;
            threshold_node = c;
        }
        v[c] += 1;
        path.push_back(c);
        i = c;
    }
}

Step step(const Instance& inst, MethodKind method, const Allocation& current, TieBreak tie) {
    Step out{current, {}};
    place_seat(inst, method, out.allocation, out.path, tie);
    return out;
}

Step step_adams(const Instance& inst, const Allocation& current, TieBreak tie) {
    return step(inst, MethodKind::Adams, current, tie);
}

Step step_jefferson(const Instance& inst, const Allocation& current, TieBreak tie) {
    return step(inst, MethodKind::Jefferson, current, tie);
}

Step step_quota(const Instance& inst, const Allocation& current, TieBreak tie) {
    return step(inst, MethodKind::Quota, current, tie);
}

Step step_uc_quota(const Instance& inst, const Allocation& current, TieBreak tie) {
    return step(inst, MethodKind::UCQuota, current, tie);
}

Trajectory run_method(const Instance& inst, MethodKind method, Seats h, TieBreak tie) {
    if (h < 0) throw std::invalid_argument("house size must be non-negative");
    Trajectory t;
    t.method = method;
    t.allocations.reserve(static_cast<std::size_t>(h) + 1);
    t.paths.reserve(static_cast<std::size_t>(h));
    t.allocations.push_back(Allocation::zeros(inst.size()));
    for (Seats g = 0; g < h; ++g) {
        Allocation next = t.allocations.back();
        std::vector<NodeId> path;
        place_seat(inst, method, next, path, tie);
        t.allocations.push_back(std::move(next));
        t.paths.push_back(std::move(path));
    }
    return t;
}

Allocation allocate(const Instance& inst, MethodKind method, Seats h, TieBreak tie) {
    if (h < 0) throw std::invalid_argument("house size must be non-negative");
    Allocation alloc = Allocation::zeros(inst.size());
    std::vector<NodeId> path;
    for (Seats g = 0; g < h; ++g) place_seat(inst, method, alloc, path, tie);
    return alloc;
}

}  // namespace mla
