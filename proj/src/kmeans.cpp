#include "rplan/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rplan/sampling.hpp"

namespace rplan {

namespace {

double sqdist(const double* a, const double* b, int dim) {
    double s = 0.0;
    for (int t = 0; t < dim; ++t) {
        double d = a[t] - b[t];
        s += d * d;
    }
    return s;
}

struct Run {
    std::vector<int> labels;
    std::vector<double> centroids;
    double inertia = std::numeric_limits<double>::infinity();
};

Run lloyd_once(const std::vector<double>& rows, int n, int dim, int k, std::mt19937_64& rng) {
    Run run;
    run.centroids.assign(static_cast<std::size_t>(k) * dim, 0.0);

    // k-means++ seeding
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    int first = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    std::copy_n(&rows[static_cast<std::size_t>(first) * dim], dim, run.centroids.begin());
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = sqdist(&rows[static_cast<std::size_t>(i) * dim],
                              &run.centroids[static_cast<std::size_t>(c - 1) * dim], dim);
            d2[i] = std::min(d2[i], d);
            total += d2[i];
        }
        int pick;
        if (total <= 0.0) {
            pick = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
        } else {
            double r = unit_uniform(rng) * total;
            pick = n - 1;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= r) {
                    pick = i;
                    break;
                }
            }
        }
        std::copy_n(&rows[static_cast<std::size_t>(pick) * dim], dim,
                    run.centroids.begin() + static_cast<std::size_t>(c) * dim);
    }

    run.labels.assign(n, 0);
    std::vector<double> sums(static_cast<std::size_t>(k) * dim);
    std::vector<int> counts(k);
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 1000; ++it) {
        double inertia = 0.0;
        for (int i = 0; i < n; ++i) {
            const double* p = &rows[static_cast<std::size_t>(i) * dim];
            double best = std::numeric_limits<double>::infinity();
            int bc = 0;
            for (int c = 0; c < k; ++c) {
                double d = sqdist(p, &run.centroids[static_cast<std::size_t>(c) * dim], dim);
                if (d < best) {
                    best = d;
                    bc = c;
                }
            }
            run.labels[i] = bc;
            inertia += best;
        }
        run.inertia = inertia;
        if (prev - inertia < 1e-10) break;
        prev = inertia;

        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            int c = run.labels[i];
            ++counts[c];
            const double* p = &rows[static_cast<std::size_t>(i) * dim];
            double* s = &sums[static_cast<std::size_t>(c) * dim];
            for (int t = 0; t < dim; ++t) s[t] += p[t];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] == 0) continue; // empty cluster keeps its centroid
            for (int t = 0; t < dim; ++t)
                run.centroids[static_cast<std::size_t>(c) * dim + t] = sums[static_cast<std::size_t>(c) * dim + t] / counts[c];
        }
    }
    return run;
}

} // namespace

KMeansResult kmeans_cluster(const std::vector<double>& rows, int dim, int k, std::uint64_t seed,
                            int restarts) {
    if (dim < 1) throw DomainError("kmeans_cluster: dim must be positive");
    if (rows.size() % dim != 0) throw DimensionMismatch("kmeans_cluster: ragged input");
    const int n = static_cast<int>(rows.size() / dim);
    if (n == 0) throw DegenerateInput("kmeans_cluster: no points");
    if (k < 1 || k > n) throw DomainError("kmeans_cluster: need 1 <= k <= n");

    std::mt19937_64 rng(seed);
    Run best;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        Run run = lloyd_once(rows, n, dim, k, rng);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return {std::move(best.labels), std::move(best.centroids), best.inertia};
}

} // namespace rplan
