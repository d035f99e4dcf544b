#include "mla/existence.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <utility>

#include "mla/quota.hpp"

namespace mla {

namespace {

struct ProtoNode {
    std::optional<std::size_t> parent;
    Rational weight;
    std::vector<std::size_t> children;
    std::vector<NodeId> members;  // original ids merged into this node
    bool introduced = false;
};

class Reducer {
public:
    explicit Reducer(const Instance& inst) : inst_(inst) {}

    std::vector<ProtoNode> run() {
        build(kRoot, std::nullopt, Rational(1));
        return std::move(protos_);
    }

private:
    std::size_t add(std::optional<std::size_t> parent, Rational weight, bool introduced) {
        protos_.push_back({parent, std::move(weight), {}, {}, introduced});
        const std::size_t idx = protos_.size() - 1;
        if (parent) protos_[*parent].children.push_back(idx);
        return idx;
    }

    void build(NodeId i, std::optional<std::size_t> parent, Rational weight) {
        const std::size_t idx = add(parent, std::move(weight), false);
        NodeId cur = i;
        protos_[idx].members.push_back(cur);
        while (inst_.children(cur).size() == 1) {
            cur = inst_.children(cur).front();
            protos_[idx].members.push_back(cur);
        }
        std::vector<std::pair<NodeId, Rational>> kids;
        for (NodeId c : inst_.children(cur)) kids.emplace_back(c, inst_.weight(c));
        attach(idx, std::move(kids));
    }

    void attach(std::size_t idx, std::vector<std::pair<NodeId, Rational>> kids) {
        if (kids.size() <= 2) {
            for (auto& [c, w] : kids) build(c, idx, std::move(w));
            return;
        }
        // Keep the first child; group the rest under a new node.
        auto [first, first_weight] = kids.front();
        build(first, idx, first_weight);
        const Rational group_weight = Rational(1) - first_weight;
        const std::size_t group = add(idx, group_weight, true);
        std::vector<std::pair<NodeId, Rational>> rest;
        for (std::size_t k = 1; k < kids.size(); ++k) {
            rest.emplace_back(kids[k].first, kids[k].second / group_weight);
        }
        attach(group, std::move(rest));
    }

    const Instance& inst_;
    std::vector<ProtoNode> protos_;
};

}  // namespace

BinaryReduction to_full_binary(const Instance& inst) {
    auto protos = Reducer(inst).run();

    // Originals first by smallest member id, then introduced nodes in creation order.
    std::vector<std::size_t> originals;
    std::vector<std::size_t> synthetic;
    for (std::size_t k = 0; k < protos.size(); ++k) {
        (protos[k].introduced ? synthetic : originals).push_back(k);
    }
    std::sort(originals.begin(), originals.end(), [&](std::size_t a, std::size_t b) {
        return *std::min_element(protos[a].members.begin(), protos[a].members.end()) <
               *std::min_element(protos[b].members.begin(), protos[b].members.end());
    });
    std::vector<NodeId> new_id(protos.size());
    NodeId next = 0;
    for (auto k : originals) new_id[k] = next++;
    for (auto k : synthetic) new_id[k] = next++;

    std::vector<NodeId> forward_map(inst.size(), 0);
    std::vector<NodeId> introduced;
    for (std::size_t k = 0; k < protos.size(); ++k) {
        for (NodeId m : protos[k].members) forward_map[m] = new_id[k];
        if (protos[k].introduced) introduced.push_back(new_id[k]);
    }
    std::sort(introduced.begin(), introduced.end());

    // Emit breadth-first so every children list keeps its order.
    RawInstance raw;
    raw.nodes.reserve(protos.size());
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const auto k = queue.front();
        queue.pop_front();
        std::optional<std::int64_t> parent;
        if (protos[k].parent) parent = static_cast<std::int64_t>(new_id[*protos[k].parent]);
        raw.nodes.push_back({static_cast<std::int64_t>(new_id[k]), parent, protos[k].weight});
        for (auto c : protos[k].children) queue.push_back(c);
    }
    return BinaryReduction{Instance::from_raw(raw), std::move(forward_map), std::move(introduced)};
}

Allocation BinaryReduction::map_back(const Allocation& reduced_alloc) const {
    Allocation out;
    out.h = reduced_alloc.h;
    out.seats.reserve(forward_map.size());
    for (NodeId image : forward_map) out.seats.push_back(reduced_alloc.seats.at(image));
    return out;
}

EmptyInterval::EmptyInterval(NodeId node)
    : std::logic_error("empty feasible interval while splitting node " + std::to_string(node)),
      node_(node) {}

namespace {

FeasibleInterval interval_for(const Instance& tree, const Allocation& alloc, NodeId c) {
    const QuotaBounds b = quota_bounds(tree, alloc, c);
    FeasibleInterval iv;
    iv.node = c;
    iv.low = b.lower;
    iv.high = b.upper;
    auto ancestors = tree.ancestors(c);
    auto ratios = tree.ancestor_ratios(c);
    for (std::size_t k = 0; k < ancestors.size(); ++k) {
        const NodeId a = ancestors[k];
        const Rational e = ratios[k] * Rational(alloc.seats[a]);
        if (k == 0 || e > iv.e_max) iv.e_max = e;
        if (k == 0 || e < iv.e_min) iv.e_min = e;
    }
    return iv;
}

// Integer in [low, high] closest to target; ties go to the smaller value.
Seats closest_in(const Rational& target, Seats low, Seats high) {
    auto base = static_cast<Seats>(target.floor());
    const Rational frac = target - Rational(base);
    Seats pick = frac > Rational(BigInt(1), BigInt(2)) ? base + 1 : base;
    return std::clamp(pick, low, high);
}

}  // namespace

BothQuotasResult allocate_both_quotas_traced(const Instance& inst, Seats h) {
    if (h < 0) throw std::invalid_argument("house size must be non-negative");
    BothQuotasResult result{Allocation{}, to_full_binary(inst), {}};
    const Instance& tree = result.reduction.reduced;

    Allocation alloc = Allocation::zeros(tree.size());
    alloc.h = h;
    alloc.seats[kRoot] = h;
    for (NodeId i : tree.top_down()) {
        if (tree.is_leaf(i)) continue;
        const NodeId x = tree.children(i)[0];
        const NodeId y = tree.children(i)[1];
        const FeasibleInterval ix = interval_for(tree, alloc, x);
        const FeasibleInterval iy = interval_for(tree, alloc, y);
        result.intervals.push_back(ix);
        result.intervals.push_back(iy);

        const Seats vi = alloc.seats[i];
        const Seats low = std::max(ix.low, vi - iy.high);
        const Seats high = std::min(ix.high, vi - iy.low);
        if (low > high) throw EmptyInterval(i);

        const Seats vx = closest_in(tree.weight(x) * Rational(vi), low, high);
        alloc.seats[x] = vx;
        alloc.seats[y] = vi - vx;
    }
    result.allocation = result.reduction.map_back(alloc);
    return result;
}

Allocation allocate_both_quotas(const Instance& inst, Seats h) {
    return allocate_both_quotas_traced(inst, h).allocation;
}

namespace {

// Exhaustive enumeration. Relative entitlements are recomputed here from the
// raw parent/weight links so the oracle shares no quota code with the
// allocator it is used to check.
class Enumerator {
public:
    Enumerator(const Instance& inst, Seats h) : inst_(inst), h_(h) {
        const std::size_t n = inst.size();
        share_.assign(n, Rational(1));
        order_.push_back(kRoot);
        for (std::size_t k = 0; k < order_.size(); ++k) {
            const NodeId i = order_[k];
            for (NodeId c : inst.children(i)) {
                share_[c] = share_[i] * inst.weight(c);
                order_.push_back(c);
            }
            if (!inst.children(i).empty()) internal_.push_back(i);
        }
        seats_.assign(n, 0);
        seats_[kRoot] = h;
    }

    std::vector<Allocation> run() {
        visit_node(0);
        return std::move(found_);
    }

private:
    bool within_quotas(NodeId c, Seats v) const {
        std::optional<NodeId> a = inst_.parent(c);
        while (a) {
            const Rational e = share_[c] / share_[*a] * Rational(seats_[*a]);
            if (BigInt(v) < e.floor() || BigInt(v) > e.ceil()) return false;
            a = inst_.parent(*a);
        }
        return true;
    }

    void visit_node(std::size_t k) {
        if (k == internal_.size()) {
            found_.push_back(Allocation{h_, seats_});
            return;
        }
        const NodeId i = internal_[k];
        visit_child(k, i, 0, seats_[i]);
    }

    void visit_child(std::size_t k, NodeId i, std::size_t child_pos, Seats remaining) {
        auto kids = inst_.children(i);
        const NodeId c = kids[child_pos];
        if (child_pos + 1 == kids.size()) {
            if (within_quotas(c, remaining)) {
                seats_[c] = remaining;
                visit_node(k + 1);
            }
            return;
        }
        for (Seats v = 0; v <= remaining; ++v) {
            if (!within_quotas(c, v)) continue;
            seats_[c] = v;
            visit_child(k, i, child_pos + 1, remaining - v);
        }
    }

    const Instance& inst_;
    Seats h_;
    std::vector<Rational> share_;
    std::vector<NodeId> order_;
    std::vector<NodeId> internal_;
    std::vector<Seats> seats_;
    std::vector<Allocation> found_;
};

}  // namespace

std::vector<Allocation> brute_force_both_quotas(const Instance& inst, Seats h) {
    if (inst.size() > kOracleMaxNodes || h > kOracleMaxSeats) {
        throw SizeLimitExceeded("oracle limited to " + std::to_string(kOracleMaxNodes) + " nodes and " +
                                std::to_string(kOracleMaxSeats) + " seats (got " +
                                std::to_string(inst.size()) + " nodes, " + std::to_string(h) + " seats)");
    }
    if (h < 0) throw std::invalid_argument("house size must be non-negative");
    return Enumerator(inst, h).run();
}

}  // namespace mla
