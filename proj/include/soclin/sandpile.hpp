#ifndef SOCLIN_SANDPILE_HPP
#define SOCLIN_SANDPILE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "soclin/avalanche.hpp"
#include "soclin/common.hpp"
#include "soclin/rng.hpp"

namespace soclin {

// Classic 2D abelian sandpile, open boundary: a toppling cell loses
// `threshold` grains, its von-Neumann neighbors gain one each, off-grid shares
// leave the system.
struct SandpileConfig {
    int width = 50;
    int height = 50;
    int threshold = 4;
    std::int64_t drops = 10000;
    std::uint64_t seed = 1;
};

struct SandpileResult {
    std::vector<AvalancheRecord> records; // one per drop, size = topplings
    std::vector<int> grid;                // final stable state, row-major
    std::int64_t grains_added = 0;
    std::int64_t grains_on_grid = 0;
    std::int64_t grains_lost = 0;
};

// One toppling of the given cell (no stability check); returns grains lost to
// the boundary (plus the threshold-minus-4 excess when threshold > 4).
inline std::int64_t topple(std::vector<int>& grid, int width, int height, int cell, int threshold) {
    const int r = cell / width;
    const int c = cell % width;
    grid[cell] -= threshold;
    int given = 0;
    if (r > 0) { ++grid[cell - width]; ++given; }
    if (r + 1 < height) { ++grid[cell + width]; ++given; }
    if (c > 0) { ++grid[cell - 1]; ++given; }
    if (c + 1 < width) { ++grid[cell + 1]; ++given; }
    return threshold - given;
}

struct StabilizeStats {
    std::int64_t topplings = 0;
    std::int64_t rounds = 0;
    std::int64_t lost = 0;
};

// Relaxes the grid with synchronous rounds: every cell unstable at the start
// of a round topples exactly once. The final state and total topplings are
// order-independent (abelian); rounds give the avalanche duration.
inline StabilizeStats stabilize(std::vector<int>& grid, int width, int height, int threshold,
                                const std::vector<int>& start_candidates) {
    StabilizeStats stats;
    std::vector<int> frontier;
    for (int cell : start_candidates)
        if (grid[cell] >= threshold) frontier.push_back(cell);

    std::vector<std::int64_t> stamp(grid.size(), -1);
    std::int64_t round = 0;
    while (!frontier.empty()) {
        ++stats.rounds;
        std::vector<int> touched;
        for (int cell : frontier) {
            stats.lost += topple(grid, width, height, cell, threshold);
            ++stats.topplings;
            touched.push_back(cell);
            const int r = cell / width;
            const int c = cell % width;
            if (r > 0) touched.push_back(cell - width);
            if (r + 1 < height) touched.push_back(cell + width);
            if (c > 0) touched.push_back(cell - 1);
            if (c + 1 < width) touched.push_back(cell + 1);
        }
        frontier.clear();
        for (int cell : touched) {
            if (stamp[cell] == round) continue;
            stamp[cell] = round;
            if (grid[cell] >= threshold) frontier.push_back(cell);
        }
        ++round;
    }
    return stats;
}

// Drives `drops` grains onto an all-zero grid. Draw protocol: one
// uniform_index(rng, width*height) per drop, nothing else touches the stream.
inline SandpileResult run_sandpile(const SandpileConfig& config) {
    if (config.width < 2 || config.height < 2)
        throw InputError("sandpile: grid must be at least 2x2");
    // A toppling hands one grain to each von-Neumann neighbor, so thresholds
    // below 4 would mint grains and break exact conservation.
    if (config.threshold < 4) throw InputError("sandpile: threshold must be >= 4");

    SandpileResult result;
    result.grid.assign(static_cast<std::size_t>(config.width) * config.height, 0);
    std::mt19937_64 rng(config.seed);

    for (std::int64_t drop = 0; drop < config.drops; ++drop) {
        const int cell = static_cast<int>(uniform_index(rng, result.grid.size()));
        ++result.grid[cell];
        ++result.grains_added;
        const StabilizeStats stats = stabilize(result.grid, config.width, config.height,
                                               config.threshold, {cell});
        result.grains_lost += stats.lost;
        result.records.push_back({drop, stats.topplings, stats.rounds});
    }
    for (int v : result.grid) result.grains_on_grid += v;
    return result;
}

} // namespace soclin

#endif // SOCLIN_SANDPILE_HPP
