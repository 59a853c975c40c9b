#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rspin {

/**
 * Stable graph of type (g, n) with legs labeled 0..n-1. Edges are stored as
 * vertex pairs (u <= v); u == v is a loop.
 */
struct StableGraph {
    std::vector<int> genus;
    std::vector<int> leg_vertex;
    std::vector<std::pair<int, int>> edges;
    /// |Aut| with legs fixed: vertex symmetries times edge permutations and
    /// loop flips.
    long automorphisms = 1;

    int vertices() const { return static_cast<int>(genus.size()); }
    /// Half-edges plus legs at v.
    int valence(int v) const;
    int betti() const { return static_cast<int>(edges.size()) - vertices() + 1; }
    int total_genus() const;
    bool stable() const;
    std::string str() const;
};

/// Largest 3g - 3 + n accepted by stable_graphs.
inline constexpr int kMaxGraphDimension = 4;

/// All stable graphs of type (g, n) up to isomorphism, in a deterministic
/// order (the trivial graph first). Throws std::invalid_argument when
/// 2g - 2 + n <= 0 and std::out_of_range beyond kMaxGraphDimension.
/// Memoized, thread-safe.
const std::vector<StableGraph>& stable_graphs(int g, int n);

}  // namespace rspin
