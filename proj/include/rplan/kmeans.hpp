#pragma once

#include <cstdint>
#include <vector>

#include "rplan/errors.hpp"

namespace rplan {

struct KMeansResult {
    std::vector<int> labels;        // one per row
    std::vector<double> centroids;  // k x dim, row-major
    double inertia = 0.0;
};

// Lloyd's algorithm with seeded k-means++ initialization; `restarts`
// independent runs keep the lowest inertia. Convergence when the inertia
// improvement drops below 1e-10. Distances are plain Euclidean on the raw
// values (the callers' features share a unit).
KMeansResult kmeans_cluster(const std::vector<double>& rows, int dim, int k,
                            std::uint64_t seed, int restarts = 10);

} // namespace rplan
