#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rplan/strategy.hpp"

namespace rplan {

// CART classification tree over the outputs-of-interest matrix. Internal
// nodes split strictly-below to the left, weakly-above to the right
// (y[feature] < threshold vs y[feature] >= threshold); thresholds sit at
// midpoints between adjacent distinct feature values.
struct TreeNode {
    int feature = -1;       // -1 on leaves
    double threshold = 0.0;
    int left = -1, right = -1;
    std::vector<int> members;              // training rows reaching this node
    std::vector<double> mean, stddev;      // per output, population statistics
    int majority_label = 0;
};

struct DecisionTree {
    int dim = 0;
    std::vector<TreeNode> nodes; // node 0 is the root

    bool fitted() const { return !nodes.empty(); }
    std::vector<int> leaf_ids() const;
    int route(const double* y) const;  // leaf node id for a sample
    double training_accuracy(const std::vector<double>& rows,
                             const std::vector<int>& labels) const;
    std::string to_dot(const std::vector<std::string>& feature_names) const;
};

// Gini-impurity CART growth, best-first by impurity decrease, stopping at
// `max_leaves` leaves or purity. Ties break to the lowest feature index,
// then the lowest threshold.
DecisionTree fit_tree(const std::vector<double>& rows, int dim, const std::vector<int>& labels,
                      int max_leaves);

// One Box strategy per leaf: the conjunction of the thresholds on the
// root-to-leaf path; outputs never split on stay unbounded.
std::vector<Strategy> strategies_from_tree(const DecisionTree& t);

// Lowers the missing bound on output j to mean - population std over the
// leaf members; returns the tightened strategy and the fraction of members
// still inside the box.
std::pair<Strategy, double> tighten_open_leaf(const Strategy& s,
                                              const std::vector<double>& rows, int dim,
                                              const std::vector<int>& members, int j);

// One Share strategy per leaf: the member-average allocation expressed as
// percent of total consumed biomass, renormalized to 100.
std::vector<Strategy> share_strategies_from_leaves(const DecisionTree& t,
                                                   const std::vector<double>& rows, int dim);

} // namespace rplan
