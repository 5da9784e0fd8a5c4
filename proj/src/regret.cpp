#include "rplan/regret.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace rplan {

LinearProgram apply_strategy_constraints(const LinearProgram& lp, const VariableLayout& layout,
                                         const Strategy& s) {
    if (layout.num_vars != lp.num_vars())
        throw IncompatibleLayout("apply_strategy_constraints: layout describes " +
                                 std::to_string(layout.num_vars) + " variables, program has " +
                                 std::to_string(lp.num_vars()));
    LinearProgram out = lp;
    const double scale = 1000.0; // strategy bounds TWh/y, expressions GWh/y

    switch (s.kind) {
        case StrategyKind::Box:
            for (int g = 0; g < kNumOutputs; ++g) {
                if (std::isfinite(s.lower[g]) && s.lower[g] > 0.0)
                    out.add_row("stgy_lo." + kOutputNames[g], RowSense::GE, s.lower[g] * scale,
                                layout.group_expr[g]);
                if (std::isfinite(s.upper[g]))
                    out.add_row("stgy_hi." + kOutputNames[g], RowSense::LE, s.upper[g] * scale,
                                layout.group_expr[g]);
            }
            break;
        case StrategyKind::Fixed:
            for (int g = 0; g < kNumOutputs; ++g)
                out.add_row("stgy_fx." + kOutputNames[g], RowSense::EQ, s.values[g] * scale,
                            layout.group_expr[g]);
            break;
        case StrategyKind::Share: {
            // y_g = sigma_g * sum(y); one row is implied by the others, so the
            // highest-index positive-share row is dropped
            int skip = -1;
            for (int g = 0; g < kNumOutputs; ++g)
                if (s.shares[g] > 0.0) skip = g;
            for (int g = 0; g < kNumOutputs; ++g) {
                if (g == skip) continue;
                const double sigma = s.shares[g] / 100.0;
                std::vector<double> dense(static_cast<std::size_t>(lp.num_vars()), 0.0);
                for (const auto& e : layout.group_expr[g]) dense[e.col] += e.value;
                for (int g2 = 0; g2 < kNumOutputs; ++g2)
                    for (const auto& e : layout.group_expr[g2]) dense[e.col] -= sigma * e.value;
                std::vector<SparseEntry> ent;
                for (int c = 0; c < lp.num_vars(); ++c)
                    if (dense[c] != 0.0) ent.push_back({c, dense[c]});
                out.add_row("stgy_sh." + kOutputNames[g], RowSense::EQ, 0.0, std::move(ent));
            }
            break;
        }
    }
    return out;
}

double regret(double cost_s, double cost_opt, double eps_tol) {
    double r = cost_s - cost_opt;
    if (r <= -eps_tol)
        throw NegativeRegret("regret: C_s - C_opt = " + std::to_string(r) +
                             " below -eps_tol = " + std::to_string(-eps_tol) +
                             " (inconsistent solves)");
    // two certified solves agree to far better than eps_tol; differences at
    // the float-summation floor read as identical optima
    if (std::abs(r) < 1e-12 * (1.0 + std::abs(cost_opt))) return 0.0;
    return r < 0.0 ? 0.0 : r;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int count = std::min(jobs, n);
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

ExplorationResult explore_scenarios(const ModelDefinition& def, const ScenarioSet& scen,
                                    const SolveOptions& opts) {
    ExplorationResult res;
    res.cost_opt_chf.assign(scen.n, 0.0);
    res.outputs_twh.assign(scen.n, {});
    res.biomass_use_gwh.assign(scen.n, 0.0);
    res.biomass_avail_gwh.assign(scen.n, 0.0);
    res.bases.assign(scen.n, {});
    res.statuses.assign(scen.n, SolveStatus::Infeasible);

    parallel_for(scen.n, opts.jobs, [&](int i) {
        std::vector<double> u(scen.points.begin() + static_cast<std::size_t>(i) * scen.d,
                              scen.points.begin() + static_cast<std::size_t>(i + 1) * scen.d);
        ConcreteModel cm = resolve_scenario(def, u);
        auto [lp, layout] = build_lp(cm);
        Solution sol = solve_lp(lp, opts.simplex, opts.nominal_basis);
        res.statuses[i] = sol.status;
        if (sol.status != SolveStatus::Optimal) return;
        res.cost_opt_chf[i] = total_cost(sol);
        res.outputs_twh[i] = outputs_of_interest(sol, layout);
        res.biomass_use_gwh[i] = total_biomass_use(sol, layout);
        res.biomass_avail_gwh[i] = layout.biomass_availability;
        res.bases[i] = std::move(sol.basis);
    });
    return res;
}

RegretMatrix evaluate_regret(const ModelDefinition& def, const ScenarioSet& scen,
                             const std::vector<Strategy>& strategies,
                             const ExplorationResult& exploration, const SolveOptions& opts) {
    if (static_cast<int>(exploration.cost_opt_chf.size()) != scen.n)
        throw DimensionMismatch("evaluate_regret: exploration covers " +
                                std::to_string(exploration.cost_opt_chf.size()) +
                                " scenarios, set has " + std::to_string(scen.n));
    const int S = static_cast<int>(strategies.size());
    RegretMatrix m;
    m.n_strategies = S;
    m.n_scenarios = scen.n;
    for (const auto& s : strategies) m.strategy_names.push_back(s.name);
    m.regret_mchf.assign(static_cast<std::size_t>(S) * scen.n, 0.0);
    m.cost_s_mchf.assign(static_cast<std::size_t>(S) * scen.n, 0.0);
    m.cost_opt_mchf.assign(scen.n, 0.0);
    m.cell_status.assign(static_cast<std::size_t>(S) * scen.n, SolveStatus::Infeasible);
    for (int i = 0; i < scen.n; ++i) m.cost_opt_mchf[i] = exploration.cost_opt_chf[i] / 1e6;

    std::exception_ptr cell_error;
    std::mutex error_mutex;

    // one task per scenario: rebuild its program once, then solve every
    // strategy warm-started from the scenario's own optimal basis
    parallel_for(scen.n, opts.jobs, [&](int i) {
        if (exploration.statuses[i] != SolveStatus::Optimal) return;
        std::vector<double> u(scen.points.begin() + static_cast<std::size_t>(i) * scen.d,
                              scen.points.begin() + static_cast<std::size_t>(i + 1) * scen.d);
        ConcreteModel cm = resolve_scenario(def, u);
        auto [lp, layout] = build_lp(cm);
        const double c_opt = exploration.cost_opt_chf[i];
        const double eps = regret_eps_tol(c_opt);

        for (int s = 0; s < S; ++s) {
            LinearProgram lps = apply_strategy_constraints(lp, layout, strategies[s]);
            BasisHint warm;
            if (!exploration.bases[i].empty()) {
                warm = exploration.bases[i];
                // freshly added rows enter with their slacks basic
                warm.statuses.append(
                    static_cast<std::size_t>(lps.num_rows() - lp.num_rows()), 'B');
            }
            Solution sol;
            try {
                sol = solve_lp(lps, opts.simplex, warm);
            } catch (const NumericalFailure&) {
                // one retry from scratch before giving the cell up
                sol = solve_lp(lps, opts.simplex);
            }
            const std::size_t cell = static_cast<std::size_t>(s) * scen.n + i;
            m.cell_status[cell] = sol.status;
            if (sol.status != SolveStatus::Optimal) continue;
            double c_s = total_cost(sol);
            try {
                double r = regret(c_s, c_opt, eps);
                // a clamped cell means both solves met the same optimum;
                // recording C_s = C_opt keeps the cost matrix consistent
                // with the clamp (average-regret identity stays exact)
                m.cost_s_mchf[cell] = (r == 0.0 ? c_opt : c_s) / 1e6;
                m.regret_mchf[cell] = r / 1e6;
            } catch (const NegativeRegret&) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!cell_error) cell_error = std::current_exception();
            }
        }
    });
    if (cell_error) std::rethrow_exception(cell_error);
    return m;
}

std::pair<double, double> average_regret_identity(const RegretMatrix& m, int s) {
    if (s < 0 || s >= m.n_strategies) throw DomainError("average_regret_identity: bad row");
    if (!m.row_all_optimal(s))
        throw StatusError("average_regret_identity: row holds non-optimal cells");
    double mean_r = 0.0, mean_cs = 0.0, mean_copt = 0.0;
    for (int i = 0; i < m.n_scenarios; ++i) {
        mean_r += m.at(s, i);
        mean_cs += m.cost_s_mchf[static_cast<std::size_t>(s) * m.n_scenarios + i];
        mean_copt += m.cost_opt_mchf[i];
    }
    const double n = static_cast<double>(m.n_scenarios);
    return {mean_r / n, mean_cs / n - mean_copt / n};
}

} // namespace rplan
