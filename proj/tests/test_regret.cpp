#include <doctest.h>

#include <cmath>

#include "rplan/regret.hpp"

using namespace rplan;

namespace {

// Two heat suppliers compete: a boiler drawing cheap biomass (booked under
// Low-T heat) and an expensive electric fallback. Pinning biomass to zero
// forces the fallback, so regret is strictly positive and known.
ModelDefinition micro_model() {
    ModelDefinition m;
    m.general.i_rate = UncertainValue::fixed(0.03);
    m.general.recycling_pct = UncertainValue::fixed(50);
    m.general.public_mobility_pct = UncertainValue::fixed(25);
    m.general.dhn_pct = UncertainValue::fixed(20);
    m.general.ntc_gw = UncertainValue::fixed(50);
    m.general.co2_extra = UncertainValue::fixed(0);
    m.general.net_zero = false;

    m.layers.push_back({"HEAT", "GWh", true, 0.0, false});
    m.layers.push_back({"ELECTRICITY", "GWh", true, 0.0, false});
    m.layers.push_back({"WOOD", "GWh", false, 0.39, true});

    Resource wood;
    wood.id = "WOOD";
    wood.kind = ResourceKind::Local;
    wood.layer = "WOOD";
    wood.cost = UncertainValue::nominal_sym(30000.0, 20);
    wood.availability = UncertainValue::fixed(20000.0);
    wood.carbon_intensity = 0.39;
    wood.biogenic = true;
    m.resources.push_back(wood);

    Resource elec;
    elec.id = "ELEC_IMPORT";
    elec.kind = ResourceKind::Import;
    elec.layer = "ELECTRICITY";
    elec.cost = UncertainValue::range(100000.0, 200000.0);
    elec.availability = UncertainValue::fixed(kInf);
    m.resources.push_back(elec);

    Technology wb;
    wb.id = "WOOD_BOILER";
    wb.main_layer = "HEAT";
    wb.modes = {{{"HEAT", 1.0}, {"WOOD", -1.25}}};
    wb.c_inv = UncertainValue::fixed(0);
    wb.c_maint = UncertainValue::fixed(0);
    wb.lifetime_y = 20;
    wb.group = "Low-T heat";
    m.technologies.push_back(wb);

    Technology eh;
    eh.id = "ELEC_HEATER";
    eh.main_layer = "HEAT";
    eh.modes = {{{"HEAT", 1.0}, {"ELECTRICITY", -1.05}}};
    eh.c_inv = UncertainValue::fixed(0);
    eh.c_maint = UncertainValue::fixed(0);
    eh.lifetime_y = 20;
    m.technologies.push_back(eh);

    DemandSpec d;
    d.layer = "HEAT";
    d.annual = UncertainValue::range(8000.0, 9000.0);
    m.demands.push_back(d);

    m.time = TimeStructure::from_days({21, 49, 93, 112, 181, 192, 206, 258, 259, 313, 318, 351});
    for (const auto& s : m.uncertain_slots()) m.uncertain_order.push_back(s.name);
    return m;
}

} // namespace

TEST_CASE("regret arithmetic and the clamp window") {
    double eps = regret_eps_tol(100.0);
    CHECK(regret(100.0, 100.0, eps) == 0.0);
    CHECK(regret(103.2, 100.0, eps) == doctest::Approx(3.2));
    CHECK_THROWS_AS(regret(99.0, 100.0, eps), NegativeRegret);
    // within the window: clamps instead of throwing
    CHECK(regret(100.0 - eps / 2, 100.0, eps) == 0.0);
}

TEST_CASE("strategy constraints on the micro model") {
    auto def = micro_model();
    auto slots = def.uncertain_slots();
    auto cm = resolve_scenario(def, std::vector<double>(slots.size(), 0.5));
    auto [lp, lay] = build_lp(cm);

    Strategy open = Strategy::box("open");
    auto lp_open = apply_strategy_constraints(lp, lay, open);
    CHECK(lp_open.num_rows() == lp.num_rows()); // nothing binds

    Strategy none = Strategy::fixed("No Biomass", {0, 0, 0, 0, 0, 0, 0, 0});
    auto lp_none = apply_strategy_constraints(lp, lay, none);
    CHECK(lp_none.num_rows() == lp.num_rows() + 8);

    auto base = solve_lp(lp);
    auto banned = solve_lp(lp_none);
    REQUIRE(base.status == SolveStatus::Optimal);
    REQUIRE(banned.status == SolveStatus::Optimal);
    CHECK(banned.objective > base.objective * 1.5); // wood is much cheaper

    // wrong layout is rejected
    VariableLayout other = lay;
    other.num_vars += 1;
    CHECK_THROWS_AS(apply_strategy_constraints(lp, other, none), IncompatibleLayout);

    // single-share strategy: all biomass flows into the one group
    std::array<double, kNumOutputs> sh{};
    sh[output_index("Low-T heat")] = 100.0;
    Strategy share = Strategy::share("all low-T", sh);
    auto lp_share = apply_strategy_constraints(lp, lay, share);
    auto s_share = solve_lp(lp_share);
    REQUIRE(s_share.status == SolveStatus::Optimal);
    CHECK(s_share.objective == doctest::Approx(base.objective).epsilon(1e-9));
}

TEST_CASE("regret grid on the micro model") {
    auto def = micro_model();
    auto scen = lhs_sample(static_cast<int>(def.uncertain_slots().size()), 6, 99);

    SolveOptions opts;
    opts.jobs = 2;
    auto exploration = explore_scenarios(def, scen, opts);
    for (auto st : exploration.statuses) REQUIRE(st == SolveStatus::Optimal);

    std::vector<Strategy> strategies;
    strategies.push_back(Strategy::box("open"));
    strategies.push_back(Strategy::fixed("No Biomass", {0, 0, 0, 0, 0, 0, 0, 0}));
    strategies.push_back(Strategy::fixed("No Biomass", {0, 0, 0, 0, 0, 0, 0, 0})); // duplicate

    auto m = evaluate_regret(def, scen, strategies, exploration, opts);
    REQUIRE(m.n_strategies == 3);
    REQUIRE(m.n_scenarios == 6);

    for (int i = 0; i < m.n_scenarios; ++i) {
        CHECK(m.at(0, i) == 0.0);      // unconstrained strategy never regrets
        CHECK(m.at(1, i) > 0.0);       // banning cheap biomass always costs
        CHECK(m.at(1, i) == m.at(2, i)); // duplicate rows identical
        CHECK(m.status_at(1, i) == SolveStatus::Optimal);
    }

    for (int s = 0; s < 3; ++s) {
        auto [lhs, rhs] = average_regret_identity(m, s);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
    }

    // single-scenario identity degenerates to the cell itself
    auto scen1 = lhs_sample(scen.d, 1, 5);
    auto exp1 = explore_scenarios(def, scen1, opts);
    auto m1 = evaluate_regret(def, scen1, strategies, exp1, opts);
    auto [l1, r1] = average_regret_identity(m1, 1);
    CHECK(l1 == doctest::Approx(m1.at(1, 0)));
    CHECK(r1 == doctest::Approx(m1.cost_s_mchf[m1.n_scenarios] - m1.cost_opt_mchf[0]));
}

TEST_CASE("nested boxes have monotone regret") {
    auto def = micro_model();
    auto scen = lhs_sample(static_cast<int>(def.uncertain_slots().size()), 4, 12);
    SolveOptions opts;
    auto exploration = explore_scenarios(def, scen, opts);

    // A in B: A caps Low-T heat at 2 TWh, B at 5 TWh
    Strategy a = Strategy::box("tight");
    a.upper[output_index("Low-T heat")] = 2.0;
    Strategy b = Strategy::box("loose");
    b.upper[output_index("Low-T heat")] = 5.0;
    auto m = evaluate_regret(def, scen, {a, b}, exploration, opts);
    for (int i = 0; i < m.n_scenarios; ++i) {
        double eps = regret_eps_tol(m.cost_opt_mchf[i]);
        CHECK(m.at(0, i) >= m.at(1, i) - eps);
    }
}

TEST_CASE("scenario permutations permute the matrix") {
    auto def = micro_model();
    auto scen = lhs_sample(static_cast<int>(def.uncertain_slots().size()), 5, 7);
    SolveOptions opts;
    auto exploration = explore_scenarios(def, scen, opts);
    Strategy none = Strategy::fixed("No Biomass", {0, 0, 0, 0, 0, 0, 0, 0});
    auto m = evaluate_regret(def, scen, {none}, exploration, opts);

    // reverse the scenario order
    ScenarioSet rev = scen;
    for (int i = 0; i < scen.n; ++i)
        for (int j = 0; j < scen.d; ++j)
            rev.points[static_cast<std::size_t>(i) * scen.d + j] =
                scen.points[static_cast<std::size_t>(scen.n - 1 - i) * scen.d + j];
    auto exp_rev = explore_scenarios(def, rev, opts);
    auto m_rev = evaluate_regret(def, rev, {none}, exp_rev, opts);
    for (int i = 0; i < scen.n; ++i)
        CHECK(m.at(0, i) == doctest::Approx(m_rev.at(0, scen.n - 1 - i)).epsilon(1e-12));
}

TEST_CASE("worker count changes nothing") {
    auto def = micro_model();
    auto scen = lhs_sample(static_cast<int>(def.uncertain_slots().size()), 5, 3);
    std::vector<Strategy> strategies = {Strategy::fixed("No Biomass", {0, 0, 0, 0, 0, 0, 0, 0})};

    SolveOptions one;
    one.jobs = 1;
    auto e1 = explore_scenarios(def, scen, one);
    auto m1 = evaluate_regret(def, scen, strategies, e1, one);

    SolveOptions four;
    four.jobs = 4;
    auto e4 = explore_scenarios(def, scen, four);
    auto m4 = evaluate_regret(def, scen, strategies, e4, four);

    CHECK(e1.cost_opt_chf == e4.cost_opt_chf);
    CHECK(m1.regret_mchf == m4.regret_mchf);
    CHECK(m1.cost_s_mchf == m4.cost_s_mchf);
}
