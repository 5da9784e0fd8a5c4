#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <set>

#include "rplan/model.hpp"
#include "rplan/model_io.hpp"
#include "rplan/simplex.hpp"
#include "rplan/strategy.hpp"
#include "rplan/system_lp.hpp"

using namespace rplan;

namespace {

const char* kModelPath = RPLAN_DATA_DIR "/swiss-lite.json";

const ModelDefinition& model() {
    static ModelDefinition def = load_model(kModelPath);
    return def;
}

} // namespace

TEST_CASE("swiss-lite loads and validates cleanly") {
    const auto& def = model();
    CHECK(validate_model(def).ok());
    CHECK(def.technologies.size() >= 30);
    CHECK(def.uncertain_order.size() >= 30);

    // all 8 outputs-of-interest groups are populated
    std::set<std::string> groups;
    for (const auto& t : def.technologies)
        if (!t.group.empty()) groups.insert(t.group);
    for (const auto& name : kOutputNames) CHECK(groups.count(name) == 1);
}

TEST_CASE("per-mode carbon closure holds for point-source conversions") {
    const auto& def = model();
    // technologies that intentionally move carbon across the boundary
    std::set<std::string> open_ended = {"DEC_BOILER_GAS", "DEC_BOILER_WOOD", "AIRCRAFT",
                                        "IND_CC",         "DAC",             "VENT",
                                        "DIGESTATE_SPREADING"};
    for (const auto& t : def.technologies) {
        if (open_ended.count(t.id)) continue;
        for (const auto& mode : t.modes) {
            double bal = 0.0;
            for (const auto& [layer_id, coeff] : mode)
                bal += def.layer(layer_id).carbon_content * coeff;
            INFO("tech ", t.id);
            CHECK(std::abs(bal) < 1e-9);
        }
    }
}

TEST_CASE("sampled biomass availability stays inside the documented bracket") {
    const auto& def = model();
    auto slots = def.uncertain_slots();
    for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto cm = resolve_scenario(def, std::vector<double>(slots.size(), u));
        double avail = 0.0;
        for (std::size_t ri = 0; ri < def.resources.size(); ++ri) {
            const Resource& r = def.resources[ri];
            if (def.layer(r.layer).biomass && r.kind != ResourceKind::ExportRemoval)
                avail += cm.resources[ri].availability;
        }
        CHECK(avail >= 27000.0); // GWh bracket from the published potentials
        CHECK(avail <= 31700.0);
    }
}

TEST_CASE("midpoint scenario solves and meets every balance") {
    const auto& def = model();
    auto slots = def.uncertain_slots();
    auto cm = resolve_scenario(def, std::vector<double>(slots.size(), 0.5));

    auto t0 = std::chrono::steady_clock::now();
    auto [lp, lay] = build_lp(cm);
    auto t1 = std::chrono::steady_clock::now();
    std::printf("[swiss-lite] rows=%d cols=%d nnz=%zu build=%.2fs\n", lp.num_rows(),
                lp.num_vars(), lp.num_nonzeros(),
                std::chrono::duration<double>(t1 - t0).count());

    Solution sol = solve_lp(lp);
    auto t2 = std::chrono::steady_clock::now();
    std::printf("[swiss-lite] midpoint solve: %.2fs, %ld iterations, obj=%.4g CHF/y\n",
                std::chrono::duration<double>(t2 - t1).count(), sol.iterations, sol.objective);

    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective > 0.0);
    CHECK(energy_balance_residual(cm, lp, lay, sol) < 1e-6);
    CHECK(seasonal_cycle_residual(cm, lay, sol) < 1e-6);
    CHECK(std::abs(co2_atmosphere_balance(cm, lay, sol)) < 1e-3); // within 1e-6 Mt

    auto y = outputs_of_interest(sol, lay);
    double total = 0.0;
    for (double v : y) {
        CHECK(v >= -1e-9);
        total += v;
    }
    CHECK(total * 1000.0 <= lay.biomass_availability + 1e-6);
    std::printf("[swiss-lite] biomass use %.1f of %.1f GWh (%.1f%%)\n", total * 1000.0,
                lay.biomass_availability, 100.0 * total * 1000.0 / lay.biomass_availability);
    // the cost-optimal design leans on the full biomass potential
    CHECK(total * 1000.0 >= 0.95 * lay.biomass_availability);

    double gap = duality_gap(lp, sol);
    CHECK(gap <= 1e-7 * (1.0 + std::abs(sol.objective)));
}
