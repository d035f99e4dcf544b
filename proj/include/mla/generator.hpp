#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mla/instance.hpp"

namespace mla {

enum class FamilyKind {
    PerfectBinary,
    // Level by level, left to right: every node at an even (0-based) position
    // in its level has four children, except on the last level.
    Full4Ary,
};

const char* to_string(FamilyKind kind);  // "binary" / "4ary"
std::optional<FamilyKind> parse_family(std::string_view name);

struct TreeFamily {
    FamilyKind kind = FamilyKind::PerfectBinary;
    int height = 1;

    friend bool operator==(const TreeFamily&, const TreeFamily&) = default;
};

inline constexpr int kMinHeight = 1;
inline constexpr int kMaxHeight = 12;

class UnsupportedHeight : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Tree without weights; ids are breadth-first, left to right.
struct TreeShape {
    std::vector<std::optional<NodeId>> parent;
    std::vector<std::vector<NodeId>> children;

    std::size_t size() const { return parent.size(); }
};

TreeShape build_tree(const TreeFamily& family);

// Closed-form node count of a family, without building it.
std::size_t family_size(const TreeFamily& family);

// mt19937_64 seeded with the seed value; its output sequence is fixed by the
// C++ standard, so the same seed gives the same instance on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [1, bound] by rejection on raw 64-bit outputs.
    std::int64_t draw(std::int64_t bound);

private:
    std::mt19937_64 engine_;
};

// Child weights from integer draws: draw_k / sum(draws).
std::vector<Rational> normalize_draws(std::span<const std::int64_t> draws);

inline constexpr std::int64_t kDefaultMaxWeight = 10;

// For every non-leaf in id order, draws one integer per child (in child order)
// uniformly from [1, max_weight] and normalizes them.
Instance assign_entitlements(const TreeShape& shape, std::uint64_t seed,
                             std::int64_t max_weight = kDefaultMaxWeight);

inline Instance generate_instance(const TreeFamily& family, std::uint64_t seed,
                                  std::int64_t max_weight = kDefaultMaxWeight) {
    return assign_entitlements(build_tree(family), seed, max_weight);
}

}  // namespace mla
