#ifndef SOCLIN_ADOPTION_HPP
#define SOCLIN_ADOPTION_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "soclin/avalanche.hpp"
#include "soclin/common.hpp"
#include "soclin/graph.hpp"
#include "soclin/rng.hpp"

namespace soclin {

enum class Topology { grid, small_world, scale_free };

inline Topology topology_from_string(const std::string& s) {
    if (s == "grid") return Topology::grid;
    if (s == "small_world") return Topology::small_world;
    if (s == "scale_free") return Topology::scale_free;
    throw InputError("unknown topology: " + s);
}

inline std::string to_string(Topology t) {
    switch (t) {
        case Topology::grid: return "grid";
        case Topology::small_world: return "small_world";
        case Topology::scale_free: return "scale_free";
    }
    return "?";
}

// Fractional-threshold cascade: a non-adopter adopts when at least one
// neighbor has adopted and the adopted fraction of its neighborhood reaches
// threshold_fraction. Innovations arrive at a constant per-step rate.
struct AdoptionConfig {
    Topology topology = Topology::small_world;
    int n_nodes = 200;
    double rewire_p = 0.1;   // small_world
    int ws_neighbors = 3;    // small_world: neighbors on each side (degree 2k)
    int attach_count = 2;    // scale_free
    double threshold_fraction = 0.25;
    double innovation_rate = 0.01;
    int steps = 1000;
    std::uint64_t seed = 1;
};

struct AdoptionTrace {
    int n_nodes = 0;
    std::vector<int> cumulative;          // adopters after each step
    std::vector<int> cascade_adoptions;   // per step, excludes innovations
    std::vector<int> innovations;         // per step, 0 or 1
    std::vector<AvalancheRecord> avalanches;
};

// Synchronous step: (1) one uniform01 draw decides an innovation; if it fires,
// one uniform_index draw picks the victim among non-adopters in ascending node
// order; (2) the cascade iterates to quiescence with synchronous rounds, no
// randomness. Avalanche = maximal run of consecutive steps with >= 1 cascade
// adoption.
inline AdoptionTrace run_adoption(const AdoptionConfig& config) {
    if (config.n_nodes < 2) throw InputError("adoption: need n_nodes >= 2");
    if (config.threshold_fraction < 0.0 || config.threshold_fraction > 1.0)
        throw InputError("adoption: threshold_fraction must be in [0,1]");

    std::mt19937_64 rng(config.seed);
    Graph graph;
    switch (config.topology) {
        case Topology::grid: graph = make_grid(config.n_nodes); break;
        case Topology::small_world:
            graph = make_small_world(config.n_nodes, config.ws_neighbors, config.rewire_p, rng);
            break;
        case Topology::scale_free:
            graph = make_scale_free(config.n_nodes, config.attach_count, rng);
            break;
    }
    if (config.topology != Topology::scale_free && !is_connected(graph))
        throw DisconnectedGraph("adoption: generated " + to_string(config.topology) +
                                " graph is disconnected (seed " + std::to_string(config.seed) + ")");

    std::vector<char> adopted(graph.n, 0);
    std::vector<int> adopted_neighbors(graph.n, 0);
    int n_adopted = 0;

    auto adopt = [&](int v) {
        adopted[v] = 1;
        ++n_adopted;
        for (int w : graph.adj[v]) ++adopted_neighbors[w];
    };

    auto ripe = [&](int v) {
        if (adopted[v] || adopted_neighbors[v] == 0) return false;
        return static_cast<double>(adopted_neighbors[v]) >=
               config.threshold_fraction * graph.degree(v);
    };

    AdoptionTrace trace;
    trace.n_nodes = graph.n;

    for (int step = 0; step < config.steps; ++step) {
        int innovated = 0;
        if (uniform01(rng) < config.innovation_rate && n_adopted < graph.n) {
            std::vector<int> pool;
            pool.reserve(graph.n - n_adopted);
            for (int v = 0; v < graph.n; ++v)
                if (!adopted[v]) pool.push_back(v);
            adopt(pool[uniform_index(rng, pool.size())]);
            innovated = 1;
        }

        int cascade_total = 0;
        std::vector<int> frontier;
        for (int v = 0; v < graph.n; ++v)
            if (ripe(v)) frontier.push_back(v);
        while (!frontier.empty()) {
            for (int v : frontier) adopt(v);
            cascade_total += static_cast<int>(frontier.size());
            std::vector<int> next;
            for (int v : frontier)
                for (int w : graph.adj[v])
                    if (ripe(w)) next.push_back(w);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            frontier = std::move(next);
        }

        trace.cumulative.push_back(n_adopted);
        trace.cascade_adoptions.push_back(cascade_total);
        trace.innovations.push_back(innovated);
    }

    // Segment cascade activity into avalanches.
    int run_start = -1;
    std::int64_t run_size = 0;
    for (int step = 0; step <= static_cast<int>(trace.cascade_adoptions.size()); ++step) {
        const bool active = step < static_cast<int>(trace.cascade_adoptions.size()) &&
                            trace.cascade_adoptions[step] > 0;
        if (active) {
            if (run_start < 0) run_start = step;
            run_size += trace.cascade_adoptions[step];
        } else if (run_start >= 0) {
            trace.avalanches.push_back({run_start, run_size, step - run_start});
            run_start = -1;
            run_size = 0;
        }
    }
    return trace;
}

} // namespace soclin

#endif // SOCLIN_ADOPTION_HPP
