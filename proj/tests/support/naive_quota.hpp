#pragma once

#include <utility>
#include <vector>

#include "mla/generator.hpp"
#include "mla/instance.hpp"

namespace mla::testing {

// R_i by multiplying weights up the parent chain.
inline Rational naive_share(const Instance& inst, NodeId i) {
    Rational r(1);
    for (std::optional<NodeId> cur = i; cur; cur = inst.parent(*cur)) r *= inst.weight(*cur);
    return r;
}

// (lower violators, upper violators) straight from the definition, one
// node/ancestor pair at a time.
inline std::pair<std::vector<NodeId>, std::vector<NodeId>> naive_violations(const Instance& inst,
                                                                            const Allocation& alloc) {
    std::vector<NodeId> lower, upper;
    for (NodeId i = 0; i < inst.size(); ++i) {
        bool lo = false, hi = false;
        std::vector<NodeId> ancestors;
        for (auto a = inst.parent(i); a; a = inst.parent(*a)) ancestors.push_back(*a);
        if (i == kRoot) ancestors.push_back(kRoot);
        for (NodeId a : ancestors) {
            const Rational va = Rational(a == kRoot ? alloc.h : alloc.seats[a]);
            const Rational e = naive_share(inst, i) / naive_share(inst, a) * va;
            if (Rational(alloc.seats[i]) < Rational(e.floor().convert_to<std::int64_t>())) lo = true;
            if (Rational(alloc.seats[i]) > Rational(e.ceil().convert_to<std::int64_t>())) hi = true;
        }
        if (lo) lower.push_back(i);
        if (hi) upper.push_back(i);
    }
    return {lower, upper};
}

// Random flow-conserving allocation of h seats: each node's seats are split
// among its children uniformly at random.
inline Allocation random_flow(SeededRng& rng, const Instance& inst, Seats h) {
    Allocation alloc = Allocation::zeros(inst.size());
    alloc.h = h;
    alloc.seats[kRoot] = h;
    for (NodeId i : inst.top_down()) {
        auto kids = inst.children(i);
        if (kids.empty()) continue;
        for (Seats s = 0; s < alloc.seats[i]; ++s) {
            alloc.seats[kids[static_cast<std::size_t>(rng.draw(static_cast<std::int64_t>(kids.size())) - 1)]] += 1;
        }
    }
    return alloc;
}

}  // namespace mla::testing
