#include "rplan/lp.hpp"

#include <algorithm>
#include <cmath>

namespace rplan {

double primal_infeasibility(const LinearProgram& lp, const std::vector<double>& x) {
    if (x.size() != static_cast<std::size_t>(lp.num_vars()))
        throw DimensionMismatch("primal_infeasibility: x size mismatch");
    double worst = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) {
        worst = std::max(worst, lp.lower_bounds()[j] - x[j]);
        worst = std::max(worst, x[j] - lp.upper_bounds()[j]);
    }
    for (int i = 0; i < lp.num_rows(); ++i) {
        double ax = 0.0;
        for (const auto& e : lp.rows()[i]) ax += e.value * x[e.col];
        double b = lp.rhs()[i];
        switch (lp.senses()[i]) {
            case RowSense::LE: worst = std::max(worst, ax - b); break;
            case RowSense::GE: worst = std::max(worst, b - ax); break;
            case RowSense::EQ: worst = std::max(worst, std::abs(ax - b)); break;
        }
    }
    return std::max(worst, 0.0);
}

// Dual objective for min c'x with row duals y:
//   g = y'b + sum_j phi(d_j; lb_j, ub_j),  d = c - A'y,
// where phi picks the bound matching the sign of d_j. Residual reduced costs
// whose matching bound is infinite are dropped; an optimal basis satisfies
// the sign conditions up to the solver tolerance, so the drop is a no-op
// beyond roundoff.
double duality_gap(const LinearProgram& lp, const Solution& sol) {
    if (sol.status != SolveStatus::Optimal)
        throw StatusError("duality_gap: solution is not optimal");
    if (sol.duals.size() != static_cast<std::size_t>(lp.num_rows()))
        throw DimensionMismatch("duality_gap: dual size mismatch");

    std::vector<double> d(lp.objective());
    double g = 0.0;
    for (int i = 0; i < lp.num_rows(); ++i) {
        g += sol.duals[i] * lp.rhs()[i];
        for (const auto& e : lp.rows()[i]) d[e.col] -= sol.duals[i] * e.value;
    }
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (d[j] > 0.0 && std::isfinite(lp.lower_bounds()[j]))
            g += d[j] * lp.lower_bounds()[j];
        else if (d[j] < 0.0 && std::isfinite(lp.upper_bounds()[j]))
            g += d[j] * lp.upper_bounds()[j];
    }
    return std::abs(sol.objective - g);
}

} // namespace rplan
