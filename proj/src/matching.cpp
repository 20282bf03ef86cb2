#include "amodal/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace amodal {

namespace {

constexpr int kFree = -1;

struct HopcroftKarp {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> match_l, match_r, dist;

    HopcroftKarp(int n_left, int n_right, const std::vector<std::vector<int>>& a)
        : adj(a), match_l(n_left, kFree), match_r(n_right, kFree), dist(n_left) {}

    bool bfs() {
        std::queue<int> q;
        bool reachable_free = false;
        for (std::size_t u = 0; u < match_l.size(); u++) {
            if (match_l[u] == kFree) {
                dist[u] = 0;
                q.push(int(u));
            } else {
                dist[u] = std::numeric_limits<int>::max();
            }
        }
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                const int w = match_r[v];
                if (w == kFree) {
                    reachable_free = true;
                } else if (dist[w] == std::numeric_limits<int>::max()) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int u) {
        for (int v : adj[u]) {
            const int w = match_r[v];
            if (w == kFree || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = std::numeric_limits<int>::max();
        return false;
    }
};

}  // namespace

std::vector<int> max_bipartite_matching(int n_left, int n_right,
                                        const std::vector<std::vector<int>>& adj) {
    HopcroftKarp hk(n_left, n_right, adj);
    while (hk.bfs()) {
        for (int u = 0; u < n_left; u++) {
            if (hk.match_l[u] == kFree) hk.dfs(u);
        }
    }
    return hk.match_l;
}

std::vector<int> max_cardinality_assignment(
    int n_left, int n_right,
    const std::vector<std::vector<std::pair<int, double>>>& wadj) {
    // Min-cost successive augmentation with cost = w_max - weight, so every
    // k-cardinality prefix is min-cost and the final maximum matching
    // maximizes total weight.
    double w_max = 0.0;
    for (const auto& row : wadj) {
        for (const auto& [v, w] : row) w_max = std::max(w_max, w);
    }
    auto cost = [&](int u, std::size_t k) { return w_max - wadj[u][k].second; };

    std::vector<int> match_l(n_left, kFree), match_r(n_right, kFree);
    const double inf = std::numeric_limits<double>::infinity();

    for (;;) {
        // Bellman-Ford over alternating paths from free left nodes.
        std::vector<double> dist_l(n_left, inf), dist_r(n_right, inf);
        std::vector<std::pair<int, int>> pred_r(n_right, {kFree, kFree});  // (left, its edge k)
        for (int u = 0; u < n_left; u++) {
            if (match_l[u] == kFree) dist_l[u] = 0.0;
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (int u = 0; u < n_left; u++) {
                if (dist_l[u] == inf) continue;
                for (std::size_t k = 0; k < wadj[u].size(); k++) {
                    const int v = wadj[u][k].first;
                    if (match_l[u] == v) continue;
                    const double nd = dist_l[u] + cost(u, k);
                    if (nd < dist_r[v]) {
                        dist_r[v] = nd;
                        pred_r[v] = {u, int(k)};
                        const int w = match_r[v];
                        if (w != kFree) {
                            // Walk back over the matched edge.
                            double back = inf;
                            for (std::size_t k2 = 0; k2 < wadj[w].size(); k2++) {
                                if (wadj[w][k2].first == v) back = nd - cost(w, k2);
                            }
                            if (back < dist_l[w]) {
                                dist_l[w] = back;
                                changed = true;
                            }
                        }
                        changed = true;
                    }
                }
            }
        }

        int best_v = kFree;
        for (int v = 0; v < n_right; v++) {
            if (match_r[v] != kFree || dist_r[v] == inf) continue;
            if (best_v == kFree || dist_r[v] < dist_r[best_v]) best_v = v;
        }
        if (best_v == kFree) break;

        // Augment along predecessor chain.
        int v = best_v;
        while (v != kFree) {
            const int u = pred_r[v].first;
            const int old = match_l[u];
            match_l[u] = v;
            match_r[v] = u;
            v = old;
        }
    }
    return match_l;
}

}  // namespace amodal
