#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mla/generator.hpp"
#include "mla/instance.hpp"

namespace mla::testing {

inline Rational q(std::int64_t num, std::int64_t den) { return Rational(BigInt(num), BigInt(den)); }

// Root with four children of weight 1/4 (ids 1..4).
inline Instance flat_four() {
    return Instance::from_parents({std::nullopt, 0, 0, 0, 0}, {1, q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
}

// Root -> 5, 6 (1/2 each); 5 -> 1, 2 and 6 -> 3, 4 (1/2 each).
inline Instance nested_pairs() {
    return Instance::from_parents({std::nullopt, 5, 5, 6, 6, 0, 0},
                                  {1, q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1, 2)});
}

// Root -> 1 (8/9), 2 (1/9); 1 -> 3 (8/9), 4 (1/9).
inline Instance skewed_pair() {
    return Instance::from_parents({std::nullopt, 0, 0, 1, 1}, {1, q(8, 9), q(1, 9), q(8, 9), q(1, 9)});
}

// Root -> 1 (8/9), 2 (1/9); 1 -> 3 (9/10), 4 (1/10); 3 -> 5 (8/9), 6 (1/9).
inline Instance skewed_chain() {
    return Instance::from_parents({std::nullopt, 0, 0, 1, 1, 3, 3},
                                  {1, q(8, 9), q(1, 9), q(9, 10), q(1, 10), q(8, 9), q(1, 9)});
}

inline Instance single_node() { return Instance::from_parents({std::nullopt}, {1}); }

// Random recursive tree on n nodes (parent of i uniform in 0..i-1), so single
// children and wide fan-outs both occur. Sibling weights are integer draws in
// [1, max_weight], normalized.
inline Instance random_tree(SeededRng& rng, std::size_t n, std::int64_t max_weight = 10) {
    std::vector<std::optional<NodeId>> parents(n);
    std::vector<std::vector<NodeId>> children(n);
    for (NodeId i = 1; i < n; ++i) {
        const auto p = static_cast<NodeId>(rng.draw(static_cast<std::int64_t>(i)) - 1);
        parents[i] = p;
        children[p].push_back(i);
    }
    std::vector<Rational> weights(n, Rational(1));
    for (NodeId i = 0; i < n; ++i) {
        if (children[i].empty()) continue;
        std::vector<std::int64_t> draws;
        for (std::size_t k = 0; k < children[i].size(); ++k) draws.push_back(rng.draw(max_weight));
        auto w = normalize_draws(draws);
        for (std::size_t k = 0; k < children[i].size(); ++k) weights[children[i][k]] = w[k];
    }
    return Instance::from_parents(parents, std::move(weights));
}

// Root with `leaves` children and the integer populations they were drawn from.
struct SingleLevel {
    Instance inst;
    std::vector<std::int64_t> populations;
};

inline SingleLevel random_single_level(SeededRng& rng, std::size_t leaves, std::int64_t max_weight = 10) {
    std::vector<std::optional<NodeId>> parents(leaves + 1, NodeId{0});
    parents[0] = std::nullopt;
    std::vector<std::int64_t> pops;
    for (std::size_t k = 0; k < leaves; ++k) pops.push_back(rng.draw(max_weight));
    auto w = normalize_draws(pops);
    std::vector<Rational> weights{Rational(1)};
    weights.insert(weights.end(), w.begin(), w.end());
    return {Instance::from_parents(parents, std::move(weights)), pops};
}

}  // namespace mla::testing
