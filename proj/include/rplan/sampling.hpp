#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rplan/errors.hpp"

namespace rplan {

// Draws from a seeded mt19937_64 mapped to [0,1) via the top 53 bits.
// std::uniform_real_distribution is implementation-defined; this mapping is
// identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; platform-independent.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

// Latin Hypercube sample over the unit hypercube: N points, d dimensions,
// one point per stratum [k/N,(k+1)/N) in every column, random placement
// within each stratum.
struct ScenarioSet {
    int n = 0;
    int d = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> names;  // canonical parameter names, size d
    std::vector<double> points;      // row-major n x d

    double at(int scenario, int param) const { return points[scenario * d + param]; }
};

ScenarioSet lhs_sample(int d, int n, std::uint64_t seed);

// Names attached after sampling travel with the columns.
ScenarioSet lhs_sample(const std::vector<std::string>& names, int n, std::uint64_t seed);

// True iff every column holds exactly one entry per stratum.
bool stratification_check(const ScenarioSet& s);

} // namespace rplan
