#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rplan/errors.hpp"

namespace rplan {

struct CurvePoint {
    double regret = 0.0;
    double cumulative_pct = 0.0;
};

// Ascending step curve: point k is (r_(k), 100*k/N). The y-intercept equals
// the share of zero-regret scenarios.
std::vector<CurvePoint> cumulative_curve(const std::vector<double>& regrets);

// Lower empirical quantile, no interpolation: the smallest v with
// |{i : r_i <= v}| / N >= alpha/100; alpha = 0 reads the minimum.
double value_at_risk(const std::vector<double>& regrets, double alpha);

struct SummaryRow {
    std::string strategy;
    double optimal_share_pct = 0.0; // share of cells with regret <= eps
    double min = 0.0, var50 = 0.0, mean = 0.0, var90 = 0.0, max = 0.0;
};

SummaryRow summarize_row(const std::string& name, const std::vector<double>& regrets,
                         double eps_tol);

// Product-moment correlation; empty when either variance vanishes.
std::optional<double> pearson_correlation(const std::vector<double>& a,
                                          const std::vector<double>& b);

// Orders parameters by the mean of |r| across strategies (undefined cells
// count as 0); ties keep declaration order. `corr` is strategies x params.
std::vector<int> top_influential_params(
    const std::vector<std::vector<std::optional<double>>>& corr, int m);

struct DecisionMapCell {
    int count = 0;
    int winner = -1;                 // strategy index, -1 = empty cell
    std::vector<double> mean_regret; // per strategy, NaN when cell empty for it
};

struct DecisionMapGrid {
    int n = 7;
    int param_i = 0, param_j = 0;
    double lo_i = 0, hi_i = 0, lo_j = 0, hi_j = 0;
    std::vector<DecisionMapCell> cells; // row-major n x n, i-bin major

    const DecisionMapCell& at(int bi, int bj) const { return cells[bi * n + bj]; }
};

// Equal-width bins over each parameter's sampled range; the winner of a cell
// is the strategy with the lowest mean regret among its scenarios (ties to
// the lowest strategy index).
DecisionMapGrid decision_map(const std::vector<std::vector<double>>& regrets_by_strategy,
                             const std::vector<double>& param_i_values,
                             const std::vector<double>& param_j_values, int i, int j, int n = 7);

struct MarginalBin {
    double lo = 0, hi = 0;
    int count = 0;
    double mean = 0.0;
    double sem = 0.0;      // population std / sqrt(count); 0 when count <= 1
    bool low_count = false;
};

std::vector<MarginalBin> marginal_regret_profile(const std::vector<double>& regrets,
                                                 const std::vector<double>& param_values,
                                                 int n = 7);

} // namespace rplan
