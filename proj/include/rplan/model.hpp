#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rplan/errors.hpp"
#include "rplan/lp.hpp"

namespace rplan {

// Uniformly distributed scalar in one of the declared forms; Fixed values
// carry no uncertainty. Resolution maps u in [0,1] affinely onto the
// implied [min,max], hitting the endpoints exactly.
struct UncertainValue {
    enum class Form { Range, NominalPct, NominalSym, Fixed };
    Form form = Form::Fixed;
    double a = 0.0; // Range: lb      NominalPct: nv   NominalSym: nv   Fixed: v
    double b = 0.0; // Range: ub      NominalPct: lo%  NominalSym: dev%
    double c = 0.0; //                NominalPct: hi%

    static UncertainValue fixed(double v) { return {Form::Fixed, v, 0, 0}; }
    static UncertainValue range(double lb, double ub) { return {Form::Range, lb, ub, 0}; }
    static UncertainValue nominal_pct(double nv, double lo_pct, double hi_pct) {
        return {Form::NominalPct, nv, lo_pct, hi_pct};
    }
    static UncertainValue nominal_sym(double nv, double dev_pct) {
        return {Form::NominalSym, nv, dev_pct, 0};
    }

    bool is_fixed() const { return form == Form::Fixed; }
    std::pair<double, double> bounds() const;
    double resolve(double u) const;
    double midpoint() const { return resolve(0.5); }
    void check(const std::string& context, std::vector<std::string>& violations) const;
};

// Balance granularity: hourly layers get one balance row per (td,h) slot,
// annual layers a single yearly row (free intra-year storage of the carrier).
struct Layer {
    std::string id;
    std::string unit;
    bool hourly = true;
    double carbon_content = 0.0; // kt CO2-equivalent embodied per unit
    bool biomass = false;        // counts toward the outputs of interest
};

enum class ResourceKind { Import, Local, ExportRemoval };

struct Resource {
    std::string id;
    ResourceKind kind = ResourceKind::Import;
    std::string layer;
    UncertainValue cost;         // CHF per layer unit
    UncertainValue availability; // layer units per year (may be Fixed(inf))
    double carbon_intensity = 0.0; // kt CO2 per unit, >= 0
    bool biogenic = false;         // use credits the atmosphere layer
    bool constant_over_year = false;
    std::string capacity_factor_series; // hourly share of annual availability
    bool ntc_limited = false;           // hourly rate capped by general NTC
};

struct Technology {
    std::string id;
    std::string main_layer; // every mode carries +1 on this layer
    std::vector<std::map<std::string, double>> modes;
    UncertainValue c_inv;   // CHF per unit/h of capacity
    UncertainValue c_maint; // CHF per unit/h per year
    double lifetime_y = 20.0;
    double c_p = 1.0;        // availability factor, or
    std::string c_p_series;  // a capacity-factor series id
    double f_min = 0.0, f_max = kInf;
    bool constant_operation = false; // single year-round activity level
    std::string group;               // outputs-of-interest group, optional

    struct FPerc {
        std::string layer;
        double lo = 0.0, hi = 1.0;
        std::string hi_general; // general parameter overriding hi (percent)
    };
    std::optional<FPerc> f_perc;

    bool uncapacitated() const;
};

enum class StorageClass { Daily, Seasonal };

struct StorageTech {
    std::string id;
    std::string layer;
    StorageClass cls = StorageClass::Daily;
    UncertainValue c_inv, c_maint; // CHF per layer unit of capacity (and /y)
    double lifetime_y = 20.0;
    double t_charge_h = 1.0, t_discharge_h = 1.0;
    double eta_in = 1.0, eta_out = 1.0;
    double s_loss = 0.0;  // fraction per hour
    double s_avail = 1.0; // usable share of installed capacity
    double f_min = 0.0, f_max = kInf;
};

struct Grid {
    std::string id;
    std::string layer;
    UncertainValue c_inv, c_maint; // CHF per unit/h of transport capacity
    double lifetime_y = 50.0;
    double loss_pct = 0.0; // distribution losses, fraction in [0,1)
};

struct DemandSpec {
    std::string layer;
    UncertainValue annual; // layer units per year
    std::string profile;   // series id; empty = flat profile
    // optional split of the sampled total into a secondary layer whose share
    // is a general percent parameter (e.g. district-heat vs decentral)
    std::string split_layer;
    std::string split_share_general;
};

struct TimeStructure {
    static constexpr int kTypicalDays = 12;
    static constexpr int kHoursPerDay = 24;
    std::array<int, kTypicalDays> td_day_of_year{}; // 1-based calendar days
    std::array<int, 365> day_to_td{};               // 0-based TD index per day
    std::array<double, kTypicalDays> td_weight{};   // days represented per TD

    static TimeStructure from_days(const std::array<int, kTypicalDays>& days);
};

struct GeneralParameters {
    UncertainValue i_rate;              // discount rate, fraction
    UncertainValue recycling_pct;       // [0,100]
    UncertainValue public_mobility_pct; // [0,100]
    UncertainValue dhn_pct;             // [0,100]
    UncertainValue ntc_gw;              // net transfer capacity
    UncertainValue co2_extra;           // unabatable emissions [kt/y]
    double co2_compensation_cost = 1.3e6; // CHF per kt
    bool net_zero = true;
};

struct Timeseries {
    std::string id;
    std::array<double, 288> values{}; // td-major: v[td*24+h]

    double at(int td, int h) const { return values[td * 24 + h]; }
};

// One uncertain parameter slot: canonical name plus the value it resolves.
struct UncertainSlot {
    std::string name;
    const UncertainValue* value = nullptr;
};

struct ModelDefinition {
    GeneralParameters general;
    std::vector<Layer> layers;
    std::vector<Resource> resources;
    std::vector<Technology> technologies;
    std::vector<StorageTech> storages;
    std::vector<Grid> grids;
    std::vector<DemandSpec> demands;
    TimeStructure time;
    std::map<std::string, Timeseries> timeseries;
    std::vector<std::string> uncertain_order;

    int layer_index(const std::string& id) const;
    const Layer& layer(const std::string& id) const;
    const Timeseries& series(const std::string& id) const;

    // Non-fixed values in canonical declaration order: general, resources,
    // technologies, storages, grids, demands.
    std::vector<UncertainSlot> uncertain_slots() const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate_model(const ModelDefinition& m);

// Capital-recovery factor i(1+i)^n / ((1+i)^n - 1); 1/n at i = 0.
double annualization_factor(double i_rate, double lifetime_y);

// Fully numeric model: the definition with every uncertain value pinned.
// Holds a pointer to the immutable definition it was resolved from.
struct ConcreteModel {
    const ModelDefinition* def = nullptr;

    double i_rate = 0, recycling_pct = 0, public_mobility_pct = 0, dhn_pct = 0;
    double ntc_gw = 0, co2_extra = 0, co2_compensation_cost = 0;
    bool net_zero = true;

    struct ResourceValues {
        double cost = 0, availability = 0;
    };
    struct CostPair {
        double c_inv = 0, c_maint = 0;
    };
    struct ConcreteDemand {
        std::string layer;
        double annual = 0;
        std::string profile;
    };

    std::vector<ResourceValues> resources;
    std::vector<CostPair> technologies;
    std::vector<CostPair> storages;
    std::vector<CostPair> grids;
    std::vector<ConcreteDemand> demands; // post-split, one per supplied layer
};

// Maps a unit-hypercube point onto the model through the canonical
// parameter order. Demand splits by general percent parameters are applied
// here so downstream consumers see plain per-layer demands.
ConcreteModel resolve_scenario(const ModelDefinition& m, const std::vector<double>& u);

} // namespace rplan
