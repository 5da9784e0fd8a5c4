#include "rplan/lp_oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

namespace rplan {

namespace {

constexpr double kFeasTol = 1e-7;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (r > (UINT64_MAX / (n - k + i))) return UINT64_MAX;
        r = r * (n - k + i) / i;
    }
    return r;
}

// One candidate active constraint: a row at equality, or a variable bound.
struct Active {
    int kind = 0; // 0: row at rhs; 1: lower bound; 2: upper bound
    int idx = 0;
};

struct BoxResult {
    bool feasible = false;
    double obj = kInf;
    std::vector<double> x;
};

// Best vertex of the polytope with infinite bounds replaced by +-box.
BoxResult enumerate_box(const LinearProgram& lp, double box) {
    const int n = lp.num_vars();
    const int m = lp.num_rows();

    std::vector<double> lb(lp.lower_bounds()), ub(lp.upper_bounds());
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(lb[j])) lb[j] = -box;
        if (!std::isfinite(ub[j])) ub[j] = box;
    }

    std::vector<Active> cands;
    for (int i = 0; i < m; ++i) cands.push_back({0, i});
    for (int j = 0; j < n; ++j) {
        cands.push_back({1, j});
        cands.push_back({2, j});
    }
    const int c = static_cast<int>(cands.size());

    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    BoxResult best;

    auto evaluate = [&](const std::vector<int>& sel) {
        M.setZero();
        rhs.setZero();
        for (int r = 0; r < n; ++r) {
            const Active& a = cands[sel[r]];
            if (a.kind == 0) {
                for (const auto& e : lp.rows()[a.idx]) M(r, e.col) = e.value;
                rhs[r] = lp.rhs()[a.idx];
            } else {
                M(r, a.idx) = 1.0;
                rhs[r] = (a.kind == 1) ? lb[a.idx] : ub[a.idx];
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (!lu.isInvertible()) return;
        Eigen::VectorXd x = lu.solve(rhs);

        for (int j = 0; j < n; ++j) {
            if (x[j] < lb[j] - kFeasTol * (1.0 + std::abs(lb[j]))) return;
            if (x[j] > ub[j] + kFeasTol * (1.0 + std::abs(ub[j]))) return;
        }
        for (int i = 0; i < m; ++i) {
            double ax = 0.0;
            for (const auto& e : lp.rows()[i]) ax += e.value * x[e.col];
            double b = lp.rhs()[i];
            double tol = kFeasTol * (1.0 + std::abs(b));
            switch (lp.senses()[i]) {
                case RowSense::LE:
                    if (ax > b + tol) return;
                    break;
                case RowSense::GE:
                    if (ax < b - tol) return;
                    break;
                case RowSense::EQ:
                    if (std::abs(ax - b) > tol) return;
                    break;
            }
        }
        best.feasible = true;
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += lp.objective()[j] * x[j];
        if (obj < best.obj - 1e-12 || best.x.empty()) {
            best.obj = std::min(obj, best.obj);
            best.x.assign(x.data(), x.data() + n);
        }
    };

    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i) pick[i] = i;
    while (true) {
        evaluate(pick);
        int i = n - 1;
        while (i >= 0 && pick[i] == c - n + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
    }
    return best;
}

} // namespace

Solution vertex_enumeration_oracle(const LinearProgram& lp) {
    const int n = lp.num_vars();
    const int m = lp.num_rows();
    if (n > 10 || m > 20)
        throw TooLarge("vertex_enumeration_oracle: beyond 10 vars / 20 rows");
    if (binomial(static_cast<std::uint64_t>(m + 2 * n), static_cast<std::uint64_t>(n)) >
        4000000ULL)
        throw TooLarge("vertex_enumeration_oracle: combination count impractical");

    // Two nested boxes replace infinite bounds; a strictly better optimum on
    // the larger box certifies an improving recession direction. Genuine
    // vertex coordinates must stay well below the inner box.
    BoxResult inner = enumerate_box(lp, 1e7);
    Solution sol;
    if (!inner.feasible) {
        sol.status = SolveStatus::Infeasible;
        return sol;
    }
    BoxResult outer = enumerate_box(lp, 1e9);
    if (outer.obj < inner.obj - 1e-6 * (1.0 + std::abs(inner.obj))) {
        sol.status = SolveStatus::Unbounded;
        return sol;
    }
    sol.status = SolveStatus::Optimal;
    sol.objective = inner.obj;
    sol.primal = inner.x;
    return sol;
}

} // namespace rplan
