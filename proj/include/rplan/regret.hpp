#pragma once

#include <functional>
#include <vector>

#include "rplan/lp.hpp"
#include "rplan/model.hpp"
#include "rplan/sampling.hpp"
#include "rplan/simplex.hpp"
#include "rplan/strategy.hpp"
#include "rplan/system_lp.hpp"

namespace rplan {

// Equality/inequality rows for the strategy appended to a copy of the base
// program; original rows and bounds stay untouched. Box bounds and Fixed
// values are TWh/y, share rows are scale-free. Throws IncompatibleLayout
// when the layout does not describe `lp`.
LinearProgram apply_strategy_constraints(const LinearProgram& lp, const VariableLayout& layout,
                                         const Strategy& s);

// C_s - C_opt with the roundoff window: results in (-eps_tol, 0) clamp to
// zero, anything at or below -eps_tol signals solver inconsistency.
double regret(double cost_s, double cost_opt, double eps_tol);

inline double regret_eps_tol(double cost_opt) { return 1e-6 * (1.0 + std::abs(cost_opt)); }

struct RegretMatrix {
    int n_strategies = 0;
    int n_scenarios = 0;
    std::vector<std::string> strategy_names;
    std::vector<double> regret_mchf;   // strategies x scenarios, MCHF/y
    std::vector<double> cost_s_mchf;   // strategies x scenarios, MCHF/y
    std::vector<double> cost_opt_mchf; // per scenario, MCHF/y
    std::vector<SolveStatus> cell_status;

    double at(int s, int i) const { return regret_mchf[static_cast<std::size_t>(s) * n_scenarios + i]; }
    SolveStatus status_at(int s, int i) const {
        return cell_status[static_cast<std::size_t>(s) * n_scenarios + i];
    }
    std::vector<double> row(int s) const {
        return {regret_mchf.begin() + static_cast<std::size_t>(s) * n_scenarios,
                regret_mchf.begin() + static_cast<std::size_t>(s + 1) * n_scenarios};
    }
    bool row_all_optimal(int s) const {
        for (int i = 0; i < n_scenarios; ++i)
            if (status_at(s, i) != SolveStatus::Optimal) return false;
        return true;
    }
};

// Exploration results reused by the regret grid: per-scenario optimal cost
// (never re-solved) and the optimal basis for warm starts.
struct ExplorationResult {
    std::vector<double> cost_opt_chf;
    std::vector<std::array<double, kNumOutputs>> outputs_twh;
    std::vector<double> biomass_use_gwh;
    std::vector<double> biomass_avail_gwh;
    std::vector<BasisHint> bases;
    std::vector<SolveStatus> statuses;
};

struct SolveOptions {
    int jobs = 1;
    SimplexOptions simplex;
    // deterministic warm-start source for scenario base solves
    BasisHint nominal_basis;
};

// Unconstrained solve of every scenario (parallel over scenarios); the
// nominal-midpoint basis, when supplied, seeds each solve deterministically.
ExplorationResult explore_scenarios(const ModelDefinition& def, const ScenarioSet& scen,
                                    const SolveOptions& opts);

// One constrained re-optimization per (strategy, scenario) cell on top of
// cached exploration results. Infeasible/unbounded cells carry their status
// and poison no other cell; negative regret beyond the tolerance throws
// NegativeRegret.
RegretMatrix evaluate_regret(const ModelDefinition& def, const ScenarioSet& scen,
                             const std::vector<Strategy>& strategies,
                             const ExplorationResult& exploration, const SolveOptions& opts);

// (mean of the row, mean(C_s) - mean(C_opt)); both sides of the
// average-regret/average-cost identity for assertion.
std::pair<double, double> average_regret_identity(const RegretMatrix& m, int s);

// Bounded worker pool: fn(i) for i in [0,n), any schedule, results must be
// slotted by index. jobs <= 1 runs inline.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

} // namespace rplan
