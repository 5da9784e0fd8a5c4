#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "rplan/model.hpp"
#include "rplan/model_io.hpp"
#include "rplan/sampling.hpp"

using namespace rplan;
namespace fs = std::filesystem;

namespace {

ModelDefinition tiny_model() {
    ModelDefinition m;
    m.general.i_rate = UncertainValue::range(0.0173, 0.047);
    m.general.recycling_pct = UncertainValue::fixed(50);
    m.general.public_mobility_pct = UncertainValue::fixed(25);
    m.general.dhn_pct = UncertainValue::range(10, 30);
    m.general.ntc_gw = UncertainValue::nominal_pct(12.9, 30, 100);
    m.general.co2_extra = UncertainValue::nominal_sym(5700, 20);
    m.general.net_zero = false;

    m.layers.push_back({"ELECTRICITY", "GWh", true, 0.0, false});
    m.layers.push_back({"HEAT", "GWh", true, 0.0, false});

    Resource imp;
    imp.id = "ELEC_IMPORT";
    imp.kind = ResourceKind::Import;
    imp.layer = "ELECTRICITY";
    imp.cost = UncertainValue::range(1e5, 2e5);
    imp.availability = UncertainValue::fixed(kInf);
    m.resources.push_back(imp);

    Technology heater;
    heater.id = "HEATER";
    heater.main_layer = "HEAT";
    heater.modes = {{{"HEAT", 1.0}, {"ELECTRICITY", -1.05}}};
    heater.c_inv = UncertainValue::nominal_sym(1e8, 30);
    heater.c_maint = UncertainValue::fixed(1e6);
    heater.lifetime_y = 20;
    m.technologies.push_back(heater);

    DemandSpec d;
    d.layer = "HEAT";
    d.annual = UncertainValue::range(8000, 10000);
    m.demands.push_back(d);

    m.time = TimeStructure::from_days({21, 49, 93, 112, 181, 192, 206, 258, 259, 313, 318, 351});
    for (const auto& s : m.uncertain_slots()) m.uncertain_order.push_back(s.name);
    return m;
}

} // namespace

TEST_CASE("uncertain value resolution hits the documented points") {
    auto sym = UncertainValue::nominal_sym(5.7, 20);
    CHECK(sym.resolve(0.5) == doctest::Approx(5.7));
    CHECK(sym.resolve(0.0) == doctest::Approx(5.7 * 0.8));
    CHECK(sym.resolve(1.0) == doctest::Approx(5.7 * 1.2));

    auto rng = UncertainValue::range(1.73, 4.7);
    CHECK(rng.resolve(0.0) == 1.73); // exact at the endpoints
    CHECK(rng.resolve(1.0) == 4.7);

    auto pct = UncertainValue::nominal_pct(12.9, 30, 100);
    CHECK(pct.resolve(1.0) == doctest::Approx(12.9));
    CHECK(pct.resolve(0.0) == doctest::Approx(0.3 * 12.9));

    CHECK(UncertainValue::fixed(3.0).resolve(0.77) == 3.0);
}

TEST_CASE("resolution is monotone and spans exactly the implied interval") {
    std::mt19937_64 rngen(3);
    for (int t = 0; t < 50; ++t) {
        double a = unit_uniform(rngen) * 10;
        double b = a + unit_uniform(rngen) * 10;
        auto v = UncertainValue::range(a, b);
        double prev = v.resolve(0.0);
        CHECK(prev == a);
        for (int k = 1; k <= 20; ++k) {
            double cur = v.resolve(k / 20.0);
            CHECK(cur >= prev - 1e-15);
            prev = cur;
        }
        CHECK(v.resolve(1.0) == b);
    }
}

TEST_CASE("annualization factor") {
    CHECK(annualization_factor(0.0, 20) == doctest::Approx(0.05));
    CHECK(annualization_factor(0.05, 1) == doctest::Approx(1.05));
    // frozen from a 40-digit evaluation of the closed form
    CHECK(annualization_factor(0.04, 25) ==
          doctest::Approx(0.06401196278645461).epsilon(1e-14));
    CHECK_THROWS_AS(annualization_factor(0.05, 0.5), DomainError);
    CHECK_THROWS_AS(annualization_factor(-0.01, 10), DomainError);
}

TEST_CASE("validator flags broken storages and year coverage") {
    ModelDefinition m = tiny_model();
    StorageTech s;
    s.id = "BAT";
    s.layer = "ELECTRICITY";
    s.c_inv = UncertainValue::fixed(1e5);
    s.c_maint = UncertainValue::fixed(1e3);
    s.eta_in = 0.95;
    s.eta_out = 1.2; // out of range
    s.t_charge_h = 4;
    s.t_discharge_h = 4;
    m.storages.push_back(s);
    m.uncertain_order.clear();
    for (const auto& sl : m.uncertain_slots()) m.uncertain_order.push_back(sl.name);

    auto rep = validate_model(m);
    REQUIRE(!rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("discharge efficiency out of range") != std::string::npos) found = true;
    CHECK(found);

    ModelDefinition m2 = tiny_model();
    m2.time.td_weight[0] -= 1.0; // weights now sum to 364
    auto rep2 = validate_model(m2);
    REQUIRE(!rep2.ok());
    bool coverage = false;
    for (const auto& v : rep2.violations)
        if (v.find("year coverage") != std::string::npos) coverage = true;
    CHECK(coverage);

    // idempotent and side-effect free
    auto once = validate_model(m2);
    auto twice = validate_model(m2);
    CHECK(once.violations == twice.violations);
}

TEST_CASE("time structure covers the year") {
    auto t = TimeStructure::from_days({21, 49, 93, 112, 181, 192, 206, 258, 259, 313, 318, 351});
    double sum = 0;
    for (double w : t.td_weight) sum += w;
    CHECK(sum == doctest::Approx(365.0));
    for (int d = 0; d < 365; ++d) {
        CHECK(t.day_to_td[d] >= 0);
        CHECK(t.day_to_td[d] < 12);
    }
}

TEST_CASE("scenario resolution and demand splits") {
    ModelDefinition m = tiny_model();
    auto slots = m.uncertain_slots();
    std::vector<double> u(slots.size(), 0.5);
    auto cm = resolve_scenario(m, u);
    CHECK(cm.i_rate == doctest::Approx(0.5 * (0.0173 + 0.047)));
    CHECK(cm.demands.size() == 1);
    CHECK(cm.demands[0].annual == doctest::Approx(9000.0));

    CHECK_THROWS_AS(resolve_scenario(m, std::vector<double>(slots.size() + 1, 0.5)),
                    DimensionMismatch);

    // split demand: 20% of the total lands on the secondary layer
    ModelDefinition ms = tiny_model();
    ms.layers.push_back({"HEAT_DHN", "GWh", true, 0.0, false});
    ms.demands[0].split_layer = "HEAT_DHN";
    ms.demands[0].split_share_general = "dhn_pct";
    auto cms = resolve_scenario(ms, std::vector<double>(slots.size(), 0.5));
    REQUIRE(cms.demands.size() == 2);
    CHECK(cms.demands[0].annual == doctest::Approx(9000.0 * 0.8));
    CHECK(cms.demands[1].annual == doctest::Approx(9000.0 * 0.2));
    CHECK(cms.demands[1].layer == "HEAT_DHN");
}

TEST_CASE("model io round trip and error paths") {
    fs::path dir = fs::temp_directory_path() / "rplan_model_io_test";
    fs::create_directories(dir / "timeseries");

    // flat 288-slot series normalized against the TD weights
    auto t = TimeStructure::from_days({21, 49, 93, 112, 181, 192, 206, 258, 259, 313, 318, 351});
    {
        std::ofstream f(dir / "timeseries" / "flat.csv");
        f << "td,hour,value\n";
        char buf[64];
        for (int td = 0; td < 12; ++td)
            for (int h = 0; h < 24; ++h) {
                std::snprintf(buf, sizeof buf, "%.17g", 1.0 / 8760.0);
                f << td + 1 << ',' << h << ',' << buf << '\n';
            }
    }
    (void)t;

    const char* doc = R"JSON({
      "general": {
        "i_rate": {"range": [0.0173, 0.047]},
        "recycling_pct": 50, "public_mobility_pct": 25, "dhn_pct": 20,
        "ntc_gw": {"nominal_pct": [12.9, 30, 100]},
        "co2_extra_kt": {"nominal_sym": [5700, 20]},
        "co2_compensation_cost_chf_per_kt": 1300000,
        "net_zero": false
      },
      "layers": [
        {"id": "ELECTRICITY", "unit": "GWh", "hourly": true}
      ],
      "resources": [
        {"id": "ELEC_IMPORT", "kind": "import", "layer": "ELECTRICITY",
         "cost": {"range": [100000, 200000]}, "availability": "inf"}
      ],
      "technologies": [],
      "storages": [],
      "grids": [],
      "demands": [
        {"layer": "ELECTRICITY", "annual": {"range": [8000, 10000]}, "profile": "flat"}
      ],
      "time": {"td_days": [21, 49, 93, 112, 181, 192, 206, 258, 259, 313, 318, 351]},
      "uncertain_order": [
        "general.i_rate", "general.ntc_gw", "general.co2_extra",
        "resource.ELEC_IMPORT.cost", "demand.ELECTRICITY.annual"
      ]
    })JSON";
    {
        std::ofstream f(dir / "model.json");
        f << doc;
    }
    auto m = load_model((dir / "model.json").string());
    CHECK(m.resources.size() == 1);
    CHECK(m.timeseries.count("flat") == 1);
    CHECK(validate_model(m).ok());

    // empty document
    {
        std::ofstream f(dir / "empty.json");
    }
    CHECK_THROWS_AS(load_model((dir / "empty.json").string()), ParseError);

    // malformed document
    {
        std::ofstream f(dir / "broken.json");
        f << "{ not json";
    }
    CHECK_THROWS_AS(load_model((dir / "broken.json").string()), ParseError);

    // missing timeseries reference
    std::string doc2(doc);
    auto pos = doc2.find("\"flat\"");
    doc2.replace(pos, 6, "\"pv_cf\"");
    {
        std::ofstream f(dir / "missing_ts.json");
        f << doc2;
    }
    CHECK_THROWS_AS(load_model((dir / "missing_ts.json").string()), MissingReference);

    fs::remove_all(dir);
}
