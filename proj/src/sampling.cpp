#include "rplan/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace rplan {

ScenarioSet lhs_sample(int d, int n, std::uint64_t seed) {
    if (n < 1 || d < 1) throw DomainError("lhs_sample: need n >= 1 and d >= 1");
    ScenarioSet s;
    s.n = n;
    s.d = d;
    s.seed = seed;
    s.names.resize(d);
    for (int j = 0; j < d; ++j) s.names[j] = "p" + std::to_string(j);
    s.points.resize(static_cast<std::size_t>(n) * d);

    std::mt19937_64 rng(seed);
    std::vector<int> perm(n);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < n; ++i) perm[i] = i;
        // Fisher-Yates with the platform-independent index draw
        for (int i = n - 1; i > 0; --i) {
            int k = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[i], perm[k]);
        }
        for (int i = 0; i < n; ++i) {
            double u = unit_uniform(rng);
            s.points[static_cast<std::size_t>(i) * d + j] = (perm[i] + u) / n;
        }
    }
    return s;
}

ScenarioSet lhs_sample(const std::vector<std::string>& names, int n, std::uint64_t seed) {
    ScenarioSet s = lhs_sample(static_cast<int>(names.size()), n, seed);
    s.names = names;
    return s;
}

bool stratification_check(const ScenarioSet& s) {
    if (s.n < 1 || s.d < 1) return false;
    std::vector<char> seen(s.n);
    for (int j = 0; j < s.d; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int i = 0; i < s.n; ++i) {
            double v = s.at(i, j);
            if (!(v >= 0.0) || v >= 1.0) return false;
            int k = static_cast<int>(std::floor(v * s.n));
            if (k < 0 || k >= s.n || seen[k]) return false;
            seen[k] = 1;
        }
    }
    return true;
}

} // namespace rplan
