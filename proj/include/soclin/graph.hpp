#ifndef SOCLIN_GRAPH_HPP
#define SOCLIN_GRAPH_HPP

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "soclin/common.hpp"
#include "soclin/rng.hpp"

namespace soclin {

// Simple undirected graph, adjacency lists sorted ascending so traversal order
// is part of the deterministic contract.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

namespace detail {

inline Graph from_edge_set(int n, const std::set<std::pair<int, int>>& edges) {
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    for (const auto& [u, v] : edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

} // namespace detail

// Row-major lattice with 4-neighbor edges; a non-square node count leaves the
// last row partial, which keeps the lattice connected.
inline Graph make_grid(int n_nodes) {
    int cols = 1;
    while ((cols + 1) * (cols + 1) <= n_nodes) ++cols;
    Graph g;
    g.n = n_nodes;
    g.adj.assign(n_nodes, {});
    for (int v = 0; v < n_nodes; ++v) {
        const int c = v % cols;
        if (c + 1 < cols && v + 1 < n_nodes) {
            g.adj[v].push_back(v + 1);
            g.adj[v + 1].push_back(v);
        }
        if (v + cols < n_nodes) {
            g.adj[v].push_back(v + cols);
            g.adj[v + cols].push_back(v);
        }
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

// Watts-Strogatz: ring of n nodes, each wired to k neighbors on each side,
// then every ring edge (i, i+j) is rewired with probability rewire_p to a
// uniformly drawn target that is neither i nor already adjacent to i.
// Draw order: edges visited by ascending i then ascending j; one uniform01
// draw per edge, then uniform_index draws until the target is valid.
inline Graph make_small_world(int n_nodes, int k_each_side, double rewire_p, std::mt19937_64& rng) {
    if (n_nodes < 2 || k_each_side < 1 || 2 * k_each_side >= n_nodes)
        throw InputError("small_world: need n >= 2 and 0 < 2k < n");
    std::set<std::pair<int, int>> edges;
    auto key = [](int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
    for (int i = 0; i < n_nodes; ++i)
        for (int j = 1; j <= k_each_side; ++j) edges.insert(key(i, (i + j) % n_nodes));

    for (int i = 0; i < n_nodes; ++i) {
        for (int j = 1; j <= k_each_side; ++j) {
            const int old_target = (i + j) % n_nodes;
            if (uniform01(rng) >= rewire_p) continue;
            if (!edges.count(key(i, old_target))) continue; // already rewired away
            // A full neighborhood leaves nothing to rewire to.
            std::set<int> taboo{i};
            for (const auto& [a, b] : edges) {
                if (a == i) taboo.insert(b);
                if (b == i) taboo.insert(a);
            }
            if (static_cast<int>(taboo.size()) >= n_nodes) continue;
            int target = old_target;
            do {
                target = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n_nodes)));
            } while (taboo.count(target));
            edges.erase(key(i, old_target));
            edges.insert(key(i, target));
        }
    }
    return detail::from_edge_set(n_nodes, edges);
}

// Barabasi-Albert preferential attachment: seed clique of m+1 nodes, then each
// new node attaches to m distinct targets drawn from the endpoint multiset
// (uniform_index draws, redrawing duplicates). Connected by construction.
inline Graph make_scale_free(int n_nodes, int attach_count, std::mt19937_64& rng) {
    const int m = attach_count;
    if (m < 1 || n_nodes < m + 1)
        throw InputError("scale_free: need attach_count >= 1 and n >= attach_count + 1");
    std::set<std::pair<int, int>> edges;
    std::vector<int> endpoints;
    auto key = [](int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
    for (int a = 0; a <= m; ++a) {
        for (int b = a + 1; b <= m; ++b) {
            edges.insert(key(a, b));
            endpoints.push_back(a);
            endpoints.push_back(b);
        }
    }
    for (int v = m + 1; v < n_nodes; ++v) {
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < m)
            targets.insert(endpoints[uniform_index(rng, endpoints.size())]);
        for (int t : targets) {
            edges.insert(key(v, t));
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return detail::from_edge_set(n_nodes, edges);
}

inline bool is_connected(const Graph& g) {
    if (g.n == 0) return true;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : g.adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == g.n;
}

} // namespace soclin

#endif // SOCLIN_GRAPH_HPP
