#ifndef SOCLIN_AVALANCHE_HPP
#define SOCLIN_AVALANCHE_HPP

#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "soclin/common.hpp"
#include "soclin/fit.hpp"

namespace soclin {

// One burst of causally connected events: topplings in the sandpile, cascade
// adoptions in the diffusion model.
struct AvalancheRecord {
    std::int64_t start_step = 0;
    std::int64_t size = 0;
    std::int64_t duration = 0;

    bool operator==(const AvalancheRecord&) const = default;
};

enum class Binning { linear, log2 };

// (size, count) histogram over nonzero avalanche sizes. log2 binning merges
// sizes in [2^k, 2^(k+1)) at the bin's geometric center, count divided by the
// bin width so slopes stay comparable across bins.
inline PointSet avalanche_distribution(const std::vector<AvalancheRecord>& records, Binning binning) {
    std::map<std::int64_t, std::int64_t> counts;
    for (const AvalancheRecord& r : records)
        if (r.size > 0) ++counts[r.size];
    if (counts.empty()) throw EmptyInput("avalanche_distribution: no nonzero avalanches");

    PointSet out;
    if (binning == Binning::linear) {
        for (const auto& [size, count] : counts)
            out.points.push_back({static_cast<double>(size), static_cast<double>(count)});
        return out;
    }

    std::map<int, std::int64_t> bins; // k -> count of sizes in [2^k, 2^(k+1))
    for (const auto& [size, count] : counts) {
        int k = 0;
        while ((std::int64_t{1} << (k + 1)) <= size) ++k;
        bins[k] += count;
    }
    for (const auto& [k, count] : bins) {
        const double lo = static_cast<double>(std::int64_t{1} << k);
        const double width = lo; // bin [lo, 2*lo)
        const double center = lo * std::numbers::sqrt2;
        out.points.push_back({center, static_cast<double>(count) / width});
    }
    return out;
}

} // namespace soclin

#endif // SOCLIN_AVALANCHE_HPP
