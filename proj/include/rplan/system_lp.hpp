#pragma once

#include <array>
#include <string>
#include <vector>

#include "rplan/lp.hpp"
#include "rplan/model.hpp"
#include "rplan/strategy.hpp"

namespace rplan {

// Index maps from model entities into the LP column space, plus the linear
// forms needed downstream (outputs of interest, biomass totals). The layout
// depends only on the ModelDefinition structure, never on the sampled
// parameter values, so one layout describes every scenario's LP.
struct VariableLayout {
    int num_vars = 0;

    std::vector<int> tech_f;         // capacity var per tech, -1 if uncapacitated
    std::vector<int> tech_act_base;  // first activity var of each tech
    std::vector<int> tech_modes;     // mode count per tech
    std::vector<char> tech_const;    // 1 = single year-round activity per mode

    std::vector<int> res_base;   // first use var per resource
    std::vector<char> res_kind;  // 'h' = 288 hourly vars, 'c'/'a' = single var

    std::vector<int> sto_f, sto_in, sto_out, sto_level;
    std::vector<int> sto_level_count; // 288 daily / 365 seasonal

    std::vector<int> grid_var;

    // y_g in GWh/y as a linear form over the primal vector
    std::array<std::vector<SparseEntry>, kNumOutputs> group_expr;
    std::vector<SparseEntry> total_biomass_expr; // biomass drawn, GWh/y
    double biomass_availability = 0.0;           // resolved total, GWh/y

    int act_var(int tech, int mode, int td, int h) const {
        return tech_const[tech] ? tech_act_base[tech] + mode
                                : tech_act_base[tech] + (mode * 288 + td * 24 + h);
    }
};

// Translates the concrete model into its cost-minimization LP. Throws
// ModelError when a demanded layer has no structural supplier or the model
// wires an unsupported combination.
std::pair<LinearProgram, VariableLayout> build_lp(const ConcreteModel& cm);

// Objective of an optimal solve, CHF/y. Throws StatusError on non-optimal.
double total_cost(const Solution& sol);

// Annual biomass allocation per outputs-of-interest group, TWh/y.
std::array<double, kNumOutputs> outputs_of_interest(const Solution& sol,
                                                    const VariableLayout& layout);

double total_biomass_use(const Solution& sol, const VariableLayout& layout); // GWh/y

// Largest energy-balance violation across hourly layers and slots, in layer
// units, relative to a freshly recomputed balance (test support).
double energy_balance_residual(const ConcreteModel& cm, const LinearProgram& lp,
                               const VariableLayout& layout, const Solution& sol);

// Seasonal storage levels replayed over the 365-day sequence; returns the
// largest |level(365) - level(0)| across seasonal storages (year cyclicity).
double seasonal_cycle_residual(const ConcreteModel& cm, const VariableLayout& layout,
                               const Solution& sol);

// Net annual atmosphere balance including unabatable emissions, kt/y.
double co2_atmosphere_balance(const ConcreteModel& cm, const VariableLayout& layout,
                              const Solution& sol);

// Flow table (tech, mode, td, hour, value) for CSV export.
std::string flows_to_csv(const ConcreteModel& cm, const VariableLayout& layout,
                         const Solution& sol);

} // namespace rplan
