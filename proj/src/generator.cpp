#include "mla/generator.hpp"

#include <limits>
#include <string>

namespace mla {

const char* to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::PerfectBinary: return "binary";
        case FamilyKind::Full4Ary: return "4ary";
    }
    return "unknown";
}

std::optional<FamilyKind> parse_family(std::string_view name) {
    if (name == "binary") return FamilyKind::PerfectBinary;
    if (name == "4ary") return FamilyKind::Full4Ary;
    return std::nullopt;
}

namespace {

void check_height(const TreeFamily& family) {
    if (family.height < kMinHeight || family.height > kMaxHeight) {
        throw UnsupportedHeight("tree height must be in " + std::to_string(kMinHeight) + ".." +
                                std::to_string(kMaxHeight) + ", got " + std::to_string(family.height));
    }
}

}  // namespace

TreeShape build_tree(const TreeFamily& family) {
    check_height(family);
    TreeShape shape;
    shape.parent.push_back(std::nullopt);
    shape.children.emplace_back();

    std::vector<NodeId> level{kRoot};
    for (int depth = 0; depth < family.height; ++depth) {
        std::vector<NodeId> next;
        for (std::size_t pos = 0; pos < level.size(); ++pos) {
            const NodeId p = level[pos];
            std::size_t fanout = 2;
            if (family.kind == FamilyKind::Full4Ary) fanout = pos % 2 == 0 ? 4 : 0;
            for (std::size_t k = 0; k < fanout; ++k) {
                const NodeId c = shape.parent.size();
                shape.parent.push_back(p);
                shape.children.emplace_back();
                shape.children[p].push_back(c);
                next.push_back(c);
            }
        }
        level = std::move(next);
    }
    return shape;
}

std::size_t family_size(const TreeFamily& family) {
    check_height(family);
    if (family.kind == FamilyKind::PerfectBinary) return (std::size_t{1} << (family.height + 1)) - 1;
    // Levels 1, 4, 8, 16, ...: level d > 0 holds 2^(d+1) nodes.
    std::size_t total = 1;
    for (int d = 1; d <= family.height; ++d) total += std::size_t{1} << (d + 1);
    return total;
}

std::int64_t SeededRng::draw(std::int64_t bound) {
    if (bound < 1) throw std::invalid_argument("draw bound must be positive");
    const auto range = static_cast<std::uint64_t>(bound);
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    // Largest multiple of range that fits, so x % range is unbiased below it.
    const std::uint64_t limit = max - (max % range + 1) % range;
    std::uint64_t x = engine_();
    while (x > limit) x = engine_();
    return static_cast<std::int64_t>(x % range) + 1;
}

std::vector<Rational> normalize_draws(std::span<const std::int64_t> draws) {
    std::int64_t sum = 0;
    for (auto d : draws) sum += d;
    std::vector<Rational> weights;
    weights.reserve(draws.size());
    for (auto d : draws) weights.emplace_back(BigInt(d), BigInt(sum));
    return weights;
}

Instance assign_entitlements(const TreeShape& shape, std::uint64_t seed, std::int64_t max_weight) {
    if (max_weight < 1) throw std::invalid_argument("max_weight must be at least 1");
    SeededRng rng(seed);
    std::vector<Rational> weights(shape.size(), Rational(1));
    std::vector<std::int64_t> draws;
    for (NodeId i = 0; i < shape.size(); ++i) {
        const auto& kids = shape.children[i];
        if (kids.empty()) continue;
        draws.clear();
        for (std::size_t k = 0; k < kids.size(); ++k) draws.push_back(rng.draw(max_weight));
        auto normalized = normalize_draws(draws);
        for (std::size_t k = 0; k < kids.size(); ++k) weights[kids[k]] = std::move(normalized[k]);
    }
    return Instance::from_parents(shape.parent, std::move(weights));
}

}  // namespace mla
