#pragma once

#include <utility>
#include <vector>

namespace amodal {

// Maximum-cardinality bipartite matching (Hopcroft-Karp). adj[u] lists the
// right-side neighbors of left node u. Returns the left-to-right assignment,
// -1 for unmatched nodes. Deterministic for a fixed adjacency order.
std::vector<int> max_bipartite_matching(int n_left, int n_right,
                                        const std::vector<std::vector<int>>& adj);

// Maximum-cardinality matching that, among all maximum matchings, maximizes
// total weight. wadj[u] lists (right index, weight >= 0) for eligible pairs.
// Successive shortest augmenting paths; exact, no greedy shortcuts.
std::vector<int> max_cardinality_assignment(
    int n_left, int n_right,
    const std::vector<std::vector<std::pair<int, double>>>& wadj);

}  // namespace amodal
