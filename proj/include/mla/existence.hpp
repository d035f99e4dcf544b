#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mla/instance.hpp"

namespace mla {

// An instance rewritten so that every node has 0 or 2 children. Single-child
// chains collapse into one node; a node with k > 2 children keeps its first
// child and moves the other k - 1 under a new node whose weight is their sum,
// with the moved weights rescaled to sum to 1.
//
// Original nodes are renumbered densely by their smallest merged id, so a
// tree without chains keeps its ids. Introduced nodes follow in creation order.
struct BinaryReduction {
    Instance reduced;
    // original id -> reduced id
    std::vector<NodeId> forward_map;
    // reduced ids of introduced nodes, ascending
    std::vector<NodeId> introduced;

    // Seats on the original tree: every original node takes the value of its image.
    Allocation map_back(const Allocation& reduced_alloc) const;
};

BinaryReduction to_full_binary(const Instance& inst);

// Seat range [low, high] admitted for a node by its already-fixed ancestors,
// together with the extreme ancestor-relative quotas e_{c,a} = R_c / R_a * V_a.
struct FeasibleInterval {
    NodeId node = 0;
    Seats low = 0;
    Seats high = 0;
    Rational e_max;
    Rational e_min;
};

class EmptyInterval : public std::logic_error {
public:
    explicit EmptyInterval(NodeId node);
    NodeId node() const { return node_; }

private:
    NodeId node_;
};

struct BothQuotasResult {
    Allocation allocation;
    BinaryReduction reduction;
    // One entry per non-root node of the reduced tree, in processing order.
    // Node ids refer to the reduced tree.
    std::vector<FeasibleInterval> intervals;
};

// Allocation of h seats meeting lower and upper quota against every ancestor.
// Not house monotone. Throws EmptyInterval only on a defect.
BothQuotasResult allocate_both_quotas_traced(const Instance& inst, Seats h);
Allocation allocate_both_quotas(const Instance& inst, Seats h);

class SizeLimitExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kOracleMaxNodes = 15;
inline constexpr Seats kOracleMaxSeats = 10;

// Every flow-conserving allocation of h seats with no quota violation,
// enumerated directly from the definition. Order: nodes top-down, children in
// input order, seat counts ascending.
std::vector<Allocation> brute_force_both_quotas(const Instance& inst, Seats h);

}  // namespace mla
