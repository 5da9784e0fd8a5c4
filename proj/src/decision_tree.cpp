#include "rplan/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace rplan {

namespace {

struct SplitChoice {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

double gini(const std::vector<int>& counts, int total) {
    if (total == 0) return 0.0;
    double g = 1.0;
    for (int c : counts) {
        double p = static_cast<double>(c) / total;
        g -= p * p;
    }
    return g;
}

int num_labels(const std::vector<int>& labels) {
    int mx = 0;
    for (int l : labels) mx = std::max(mx, l);
    return mx + 1;
}

SplitChoice best_split(const std::vector<double>& rows, int dim, const std::vector<int>& labels,
                       int n_labels, const std::vector<int>& members) {
    SplitChoice best;
    const int n = static_cast<int>(members.size());
    std::vector<int> node_counts(n_labels, 0);
    for (int r : members) ++node_counts[labels[r]];
    const double g0 = gini(node_counts, n);
    if (g0 <= 0.0) return best;

    std::vector<std::pair<double, int>> vals(n); // (value, label)
    for (int f = 0; f < dim; ++f) {
        for (int i = 0; i < n; ++i)
            vals[i] = {rows[static_cast<std::size_t>(members[i]) * dim + f], labels[members[i]]};
        std::sort(vals.begin(), vals.end());
        std::vector<int> left_counts(n_labels, 0);
        int n_left = 0;
        for (int i = 0; i + 1 < n; ++i) {
            ++left_counts[vals[i].second];
            ++n_left;
            if (vals[i].first == vals[i + 1].first) continue; // not a boundary
            double thr = 0.5 * (vals[i].first + vals[i + 1].first);
            std::vector<int> right_counts(n_labels);
            for (int c = 0; c < n_labels; ++c) right_counts[c] = node_counts[c] - left_counts[c];
            double weighted = (n_left * gini(left_counts, n_left) +
                               (n - n_left) * gini(right_counts, n - n_left)) /
                              n;
            double gain = g0 - weighted;
            // strict improvement keeps the lowest feature / lowest threshold on ties
            if (gain > best.gain + 1e-15) {
                best = {gain, f, thr};
            }
        }
    }
    return best;
}

void finalize_node(TreeNode& node, const std::vector<double>& rows, int dim,
                   const std::vector<int>& labels, int n_labels) {
    node.mean.assign(dim, 0.0);
    node.stddev.assign(dim, 0.0);
    const int n = static_cast<int>(node.members.size());
    if (n == 0) return;
    for (int r : node.members)
        for (int f = 0; f < dim; ++f) node.mean[f] += rows[static_cast<std::size_t>(r) * dim + f];
    for (int f = 0; f < dim; ++f) node.mean[f] /= n;
    for (int r : node.members)
        for (int f = 0; f < dim; ++f) {
            double d = rows[static_cast<std::size_t>(r) * dim + f] - node.mean[f];
            node.stddev[f] += d * d;
        }
    for (int f = 0; f < dim; ++f) node.stddev[f] = std::sqrt(node.stddev[f] / n);

    std::vector<int> counts(n_labels, 0);
    for (int r : node.members) ++counts[labels[r]];
    node.majority_label =
        static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

} // namespace

std::vector<int> DecisionTree::leaf_ids() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (nodes[i].feature < 0) out.push_back(i);
    return out;
}

int DecisionTree::route(const double* y) const {
    if (nodes.empty()) throw StatusError("decision tree is not fitted");
    int id = 0;
    while (nodes[id].feature >= 0)
        id = (y[nodes[id].feature] < nodes[id].threshold) ? nodes[id].left : nodes[id].right;
    return id;
}

double DecisionTree::training_accuracy(const std::vector<double>& rows,
                                       const std::vector<int>& labels) const {
    const int n = static_cast<int>(labels.size());
    if (n == 0) return 0.0;
    int hits = 0;
    for (int i = 0; i < n; ++i)
        if (nodes[route(&rows[static_cast<std::size_t>(i) * dim])].majority_label == labels[i])
            ++hits;
    return static_cast<double>(hits) / n;
}

std::string DecisionTree::to_dot(const std::vector<std::string>& feature_names) const {
    std::ostringstream os;
    os << "digraph tree {\n  node [shape=box];\n";
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        const TreeNode& nd = nodes[i];
        if (nd.feature >= 0) {
            os << "  n" << i << " [label=\"" << feature_names.at(nd.feature) << " < "
               << nd.threshold << "\"];\n";
            os << "  n" << i << " -> n" << nd.left << " [label=\"yes\"];\n";
            os << "  n" << i << " -> n" << nd.right << " [label=\"no\"];\n";
        } else {
            os << "  n" << i << " [label=\"leaf " << i << "\\nN=" << nd.members.size()
               << "\\nlabel=" << nd.majority_label << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

DecisionTree fit_tree(const std::vector<double>& rows, int dim, const std::vector<int>& labels,
                      int max_leaves) {
    if (dim < 1) throw DomainError("fit_tree: dim must be positive");
    if (labels.empty() || rows.size() != labels.size() * static_cast<std::size_t>(dim))
        throw DegenerateInput("fit_tree: empty or ragged training data");
    if (max_leaves < 1) throw DomainError("fit_tree: max_leaves must be >= 1");
    const int n_labels = num_labels(labels);

    DecisionTree t;
    t.dim = dim;
    TreeNode root;
    root.members.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) root.members[i] = static_cast<int>(i);
    finalize_node(root, rows, dim, labels, n_labels);
    t.nodes.push_back(std::move(root));

    // best-first growth: repeatedly split the leaf with the largest
    // impurity decrease until the leaf budget or purity
    struct Candidate {
        int node = -1;
        SplitChoice split;
    };
    std::vector<Candidate> frontier{{0, best_split(rows, dim, labels, n_labels, t.nodes[0].members)}};
    int n_leaves = 1;
    while (n_leaves < max_leaves) {
        int pick = -1;
        for (int i = 0; i < static_cast<int>(frontier.size()); ++i) {
            if (frontier[i].split.feature < 0) continue;
            if (pick < 0 || frontier[i].split.gain > frontier[pick].split.gain + 1e-15)
                pick = i;
        }
        if (pick < 0) break; // every leaf pure or unsplittable

        Candidate cand = frontier[pick];
        frontier.erase(frontier.begin() + pick);
        TreeNode& parent = t.nodes[cand.node];
        TreeNode lnode, rnode;
        for (int r : parent.members) {
            double v = rows[static_cast<std::size_t>(r) * dim + cand.split.feature];
            (v < cand.split.threshold ? lnode : rnode).members.push_back(r);
        }
        finalize_node(lnode, rows, dim, labels, n_labels);
        finalize_node(rnode, rows, dim, labels, n_labels);
        parent.feature = cand.split.feature;
        parent.threshold = cand.split.threshold;
        int li = static_cast<int>(t.nodes.size());
        parent.left = li;
        parent.right = li + 1;
        t.nodes.push_back(std::move(lnode));
        t.nodes.push_back(std::move(rnode));
        frontier.push_back({li, best_split(rows, dim, labels, n_labels, t.nodes[li].members)});
        frontier.push_back(
            {li + 1, best_split(rows, dim, labels, n_labels, t.nodes[li + 1].members)});
        ++n_leaves;
    }
    return t;
}

std::vector<Strategy> strategies_from_tree(const DecisionTree& t) {
    if (!t.fitted()) throw StatusError("strategies_from_tree: tree is not fitted");
    std::vector<Strategy> out;
    std::map<std::string, int> name_uses;

    struct Frame {
        int node;
        std::array<double, kNumOutputs> lo, hi;
    };
    Frame root;
    root.node = 0;
    root.lo.fill(-kInf);
    root.hi.fill(kInf);
    std::vector<Frame> stack{root};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const TreeNode& nd = t.nodes[f.node];
        if (nd.feature >= 0) {
            Frame l = f, r = f;
            l.node = nd.left;
            l.hi[nd.feature] = std::min(l.hi[nd.feature], nd.threshold);
            r.node = nd.right;
            r.lo[nd.feature] = std::max(r.lo[nd.feature], nd.threshold);
            stack.push_back(r);
            stack.push_back(l); // left-to-right traversal order
            continue;
        }
        // name the leaf by the output its mean emphasises most
        int emph = 0;
        double best = -kInf;
        for (int j = 0; j < std::min<int>(t.dim, kNumOutputs); ++j) {
            double score = nd.mean.empty() ? 0.0 : nd.mean[j];
            if (std::isfinite(f.lo[j]) && f.lo[j] > 0) score += f.lo[j];
            if (score > best) {
                best = score;
                emph = j;
            }
        }
        std::string base = kOutputNames[emph];
        int uses = ++name_uses[base];
        Strategy s = Strategy::box(uses == 1 ? base : base + " " + std::to_string(uses));
        s.lower = f.lo;
        s.upper = f.hi;
        out.push_back(std::move(s));
    }
    return out;
}

std::pair<Strategy, double> tighten_open_leaf(const Strategy& s, const std::vector<double>& rows,
                                              int dim, const std::vector<int>& members, int j) {
    if (s.kind != StrategyKind::Box) throw DomainError("tighten_open_leaf: not a Box strategy");
    if (j < 0 || j >= kNumOutputs) throw DomainError("tighten_open_leaf: bad output index");
    if (members.empty()) throw DegenerateInput("tighten_open_leaf: no members");

    double mean = 0.0;
    for (int r : members) mean += rows[static_cast<std::size_t>(r) * dim + j];
    mean /= static_cast<double>(members.size());
    double var = 0.0;
    for (int r : members) {
        double d = rows[static_cast<std::size_t>(r) * dim + j] - mean;
        var += d * d;
    }
    double sd = std::sqrt(var / static_cast<double>(members.size())); // population std

    Strategy out = s;
    out.lower[j] = std::max(out.lower[j], mean - sd);
    int kept = 0;
    for (int r : members)
        if (rows[static_cast<std::size_t>(r) * dim + j] >= out.lower[j]) ++kept;
    return {out, static_cast<double>(kept) / static_cast<double>(members.size())};
}

std::vector<Strategy> share_strategies_from_leaves(const DecisionTree& t,
                                                   const std::vector<double>& rows, int dim) {
    if (!t.fitted()) throw StatusError("share_strategies_from_leaves: tree is not fitted");
    std::vector<Strategy> boxes = strategies_from_tree(t); // reuse leaf naming/order
    std::vector<int> leaves = t.leaf_ids();

    // strategies_from_tree walks leaves left-to-right; leaf_ids is by node id.
    // Recover the traversal order by routing each leaf's first member.
    std::vector<Strategy> out;
    std::size_t bi = 0;
    std::vector<int> ordered;
    {
        struct Frame { int node; };
        std::vector<Frame> stack{{0}};
        while (!stack.empty()) {
            Frame f = stack.back();
            stack.pop_back();
            const TreeNode& nd = t.nodes[f.node];
            if (nd.feature >= 0) {
                stack.push_back({nd.right});
                stack.push_back({nd.left});
            } else {
                ordered.push_back(f.node);
            }
        }
    }
    for (int leaf : ordered) {
        const TreeNode& nd = t.nodes[leaf];
        std::array<double, kNumOutputs> sh{};
        int used = 0;
        for (int r : nd.members) {
            const double* y = &rows[static_cast<std::size_t>(r) * dim];
            double total = 0.0;
            for (int f = 0; f < std::min<int>(dim, kNumOutputs); ++f) total += y[f];
            if (total <= 0.0) continue; // zero-biomass member carries no share
            for (int f = 0; f < std::min<int>(dim, kNumOutputs); ++f)
                sh[f] += y[f] / total;
            ++used;
        }
        if (used == 0) throw DegenerateInput("share strategy: leaf uses no biomass");
        double sum = 0.0;
        for (double& v : sh) {
            v = v / used * 100.0;
            sum += v;
        }
        for (double& v : sh) v *= 100.0 / sum; // renormalize to exactly 100
        out.push_back(Strategy::share(boxes[bi].name + " avg", sh));
        ++bi;
    }
    return out;
}

} // namespace rplan
