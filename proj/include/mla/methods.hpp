#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mla/instance.hpp"

namespace mla {

// Level-by-level seat-by-seat rules. Every rule hands the new seat to the
// root and then, at each non-leaf on the way down, to one child:
//   Adams      smallest V_c / R_c
//   Jefferson  smallest (V_c + 1) / R_c
//   Quota      Jefferson among children with V_c / W_c < V_i + 1
//   UCQuota    Jefferson among children with V_c / R_c < t, where t is the
//              minimum of (V_a + 1) / R_a over the ancestors already on the path
// All values are taken before the seat is placed.
enum class MethodKind {
    Adams,
    Jefferson,
    Quota,
    UCQuota,
};

inline constexpr MethodKind kAllMethods[] = {MethodKind::Adams, MethodKind::Jefferson,
                                             MethodKind::Quota, MethodKind::UCQuota};

const char* to_string(MethodKind method);
std::optional<MethodKind> parse_method(std::string_view name);

enum class TieBreak {
    LowestIndex,
};

// Raised when a non-leaf receives a seat but no child may take it. The
// quota rules are well-defined, so this indicates a defect.
class NoEligibleChild : public std::logic_error {
public:
    NoEligibleChild(MethodKind method, NodeId node);
    NodeId node() const { return node_; }

private:
    NodeId node_;
};

struct Step {
    Allocation allocation;
    // Nodes that received the seat, root first.
    std::vector<NodeId> path;
};

Step step_adams(const Instance& inst, const Allocation& current, TieBreak tie = TieBreak::LowestIndex);
Step step_jefferson(const Instance& inst, const Allocation& current, TieBreak tie = TieBreak::LowestIndex);
Step step_quota(const Instance& inst, const Allocation& current, TieBreak tie = TieBreak::LowestIndex);
Step step_uc_quota(const Instance& inst, const Allocation& current, TieBreak tie = TieBreak::LowestIndex);
Step step(const Instance& inst, MethodKind method, const Allocation& current,
          TieBreak tie = TieBreak::LowestIndex);

// In-place variant used by the loops: adds one seat to `alloc` and writes the
// receiving path into `path`.
void place_seat(const Instance& inst, MethodKind method, Allocation& alloc, std::vector<NodeId>& path,
                TieBreak tie = TieBreak::LowestIndex);

struct Trajectory {
    MethodKind method = MethodKind::Adams;
    // allocations[g] is V^g for g = 0..h.
    std::vector<Allocation> allocations;
    // paths[g] is the path of seat g + 1.
    std::vector<std::vector<NodeId>> paths;

    const Allocation& final_allocation() const { return allocations.back(); }
};

Trajectory run_method(const Instance& inst, MethodKind method, Seats h,
                      TieBreak tie = TieBreak::LowestIndex);

// Final allocation only.
Allocation allocate(const Instance& inst, MethodKind method, Seats h,
                    TieBreak tie = TieBreak::LowestIndex);

}  // namespace mla
