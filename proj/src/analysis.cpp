#include "rplan/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rplan {

std::vector<CurvePoint> cumulative_curve(const std::vector<double>& regrets) {
    if (regrets.empty()) throw EmptyInput("cumulative_curve: no regrets");
    std::vector<double> sorted(regrets);
    std::sort(sorted.begin(), sorted.end());
    std::vector<CurvePoint> out(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        out[k] = {sorted[k], 100.0 * static_cast<double>(k + 1) / n};
    return out;
}

double value_at_risk(const std::vector<double>& regrets, double alpha) {
    if (regrets.empty()) throw EmptyInput("value_at_risk: no regrets");
    if (!(alpha >= 0.0 && alpha <= 100.0))
        throw DomainError("value_at_risk: alpha must lie in [0,100]");
    std::vector<double> sorted(regrets);
    std::sort(sorted.begin(), sorted.end());
    if (alpha == 0.0) return sorted.front();
    const int n = static_cast<int>(sorted.size());
    int k = static_cast<int>(std::ceil(alpha / 100.0 * n - 1e-12));
    k = std::clamp(k, 1, n);
    return sorted[k - 1];
}

SummaryRow summarize_row(const std::string& name, const std::vector<double>& regrets,
                         double eps_tol) {
    if (regrets.empty()) throw EmptyInput("summarize_row: no regrets");
    SummaryRow row;
    row.strategy = name;
    int optimal = 0;
    double sum = 0.0;
    for (double r : regrets) {
        if (r <= eps_tol) ++optimal;
        sum += r;
    }
    row.optimal_share_pct = 100.0 * optimal / static_cast<double>(regrets.size());
    row.mean = sum / static_cast<double>(regrets.size());
    row.min = *std::min_element(regrets.begin(), regrets.end());
    row.max = *std::max_element(regrets.begin(), regrets.end());
    row.var50 = value_at_risk(regrets, 50.0);
    row.var90 = value_at_risk(regrets, 90.0);
    return row;
}

std::optional<double> pearson_correlation(const std::vector<double>& a,
                                          const std::vector<double>& b) {
    if (a.size() != b.size()) throw LengthMismatch("pearson_correlation: length mismatch");
    if (a.size() < 2) throw LengthMismatch("pearson_correlation: need at least 2 samples");
    const double n = static_cast<double>(a.size());
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

std::vector<int> top_influential_params(
    const std::vector<std::vector<std::optional<double>>>& corr, int m) {
    if (corr.empty()) return {};
    const int n_params = static_cast<int>(corr.front().size());
    for (const auto& row : corr)
        if (static_cast<int>(row.size()) != n_params)
            throw LengthMismatch("top_influential_params: ragged matrix");
    if (m > n_params) throw DomainError("top_influential_params: m exceeds parameter count");

    std::vector<double> mean_abs(n_params, 0.0);
    for (const auto& row : corr)
        for (int p = 0; p < n_params; ++p)
            mean_abs[p] += row[p] ? std::abs(*row[p]) : 0.0;
    for (double& v : mean_abs) v /= static_cast<double>(corr.size());

    std::vector<int> order(n_params);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return mean_abs[x] > mean_abs[y]; });
    order.resize(m);
    return order;
}

namespace {

int bin_of(double v, double lo, double hi, int n) {
    if (hi <= lo) return 0; // degenerate range: single bin
    int b = static_cast<int>((v - lo) / (hi - lo) * n);
    return std::clamp(b, 0, n - 1); // the max lands in the last bin
}

} // namespace

DecisionMapGrid decision_map(const std::vector<std::vector<double>>& regrets_by_strategy,
                             const std::vector<double>& pi, const std::vector<double>& pj,
                             int i, int j, int n) {
    if (i == j) throw DomainError("decision_map: need two distinct parameters");
    if (n < 1) throw DomainError("decision_map: n must be >= 1");
    if (regrets_by_strategy.empty()) throw EmptyInput("decision_map: no strategies");
    const std::size_t N = pi.size();
    if (pj.size() != N) throw LengthMismatch("decision_map: parameter vectors differ");
    for (const auto& r : regrets_by_strategy)
        if (r.size() != N) throw LengthMismatch("decision_map: regret row length mismatch");

    DecisionMapGrid g;
    g.n = n;
    g.param_i = i;
    g.param_j = j;
    g.lo_i = *std::min_element(pi.begin(), pi.end());
    g.hi_i = *std::max_element(pi.begin(), pi.end());
    g.lo_j = *std::min_element(pj.begin(), pj.end());
    g.hi_j = *std::max_element(pj.begin(), pj.end());
    const int S = static_cast<int>(regrets_by_strategy.size());
    g.cells.assign(static_cast<std::size_t>(n) * n, DecisionMapCell{});
    for (auto& c : g.cells) c.mean_regret.assign(S, std::numeric_limits<double>::quiet_NaN());

    std::vector<std::vector<double>> sums(g.cells.size(), std::vector<double>(S, 0.0));
    for (std::size_t s = 0; s < N; ++s) {
        int bi = bin_of(pi[s], g.lo_i, g.hi_i, n);
        int bj = bin_of(pj[s], g.lo_j, g.hi_j, n);
        auto& cell = g.cells[static_cast<std::size_t>(bi) * n + bj];
        ++cell.count;
        for (int st = 0; st < S; ++st)
            sums[static_cast<std::size_t>(bi) * n + bj][st] += regrets_by_strategy[st][s];
    }
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
        auto& cell = g.cells[c];
        if (cell.count == 0) continue; // stays Empty
        int winner = 0;
        for (int st = 0; st < S; ++st) {
            cell.mean_regret[st] = sums[c][st] / cell.count;
            if (cell.mean_regret[st] < cell.mean_regret[winner]) winner = st;
        }
        cell.winner = winner;
    }
    return g;
}

std::vector<MarginalBin> marginal_regret_profile(const std::vector<double>& regrets,
                                                 const std::vector<double>& params, int n) {
    if (n < 1) throw DomainError("marginal_regret_profile: n must be >= 1");
    if (regrets.size() != params.size())
        throw LengthMismatch("marginal_regret_profile: length mismatch");
    if (regrets.empty()) throw EmptyInput("marginal_regret_profile: no data");

    double lo = *std::min_element(params.begin(), params.end());
    double hi = *std::max_element(params.begin(), params.end());
    std::vector<MarginalBin> bins(n);
    for (int b = 0; b < n; ++b) {
        bins[b].lo = lo + (hi - lo) * b / n;
        bins[b].hi = lo + (hi - lo) * (b + 1) / n;
    }
    std::vector<double> sum(n, 0.0), sq(n, 0.0);
    for (std::size_t s = 0; s < params.size(); ++s) {
        int b = bin_of(params[s], lo, hi, n);
        ++bins[b].count;
        sum[b] += regrets[s];
        sq[b] += regrets[s] * regrets[s];
    }
    for (int b = 0; b < n; ++b) {
        if (bins[b].count == 0) {
            bins[b].low_count = true; // empty bin, flagged
            continue;
        }
        double c = bins[b].count;
        bins[b].mean = sum[b] / c;
        double var = std::max(0.0, sq[b] / c - bins[b].mean * bins[b].mean);
        bins[b].sem = bins[b].count > 1 ? std::sqrt(var) / std::sqrt(c) : 0.0;
        bins[b].low_count = bins[b].count <= 1;
    }
    return bins;
}

} // namespace rplan
