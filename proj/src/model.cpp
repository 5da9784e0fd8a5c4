#include "rplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rplan {

std::pair<double, double> UncertainValue::bounds() const {
    switch (form) {
        case Form::Range: return {a, b};
        case Form::NominalPct: return {a * b / 100.0, a * c / 100.0};
        case Form::NominalSym: return {a * (1.0 - b / 100.0), a * (1.0 + b / 100.0)};
        case Form::Fixed: return {a, a};
    }
    return {a, a};
}

double UncertainValue::resolve(double u) const {
    if (form == Form::Fixed) return a;
    auto [lo, hi] = bounds();
    // lo*(1-u) + hi*u hits both endpoints exactly
    return lo * (1.0 - u) + hi * u;
}

void UncertainValue::check(const std::string& ctx, std::vector<std::string>& out) const {
    switch (form) {
        case Form::Range:
            if (!(a <= b)) out.push_back(ctx + ": range lower bound exceeds upper");
            break;
        case Form::NominalPct:
            if (!(b <= c)) out.push_back(ctx + ": lo_pct exceeds hi_pct");
            break;
        case Form::NominalSym:
            if (b < 0) out.push_back(ctx + ": negative symmetric deviation");
            break;
        case Form::Fixed:
            break;
    }
    auto [lo, hi] = bounds();
    if (lo > hi) out.push_back(ctx + ": implied interval is empty");
}

bool Technology::uncapacitated() const {
    auto [inv_lo, inv_hi] = c_inv.bounds();
    auto [mnt_lo, mnt_hi] = c_maint.bounds();
    return f_min == 0.0 && !std::isfinite(f_max) && inv_hi == 0.0 && mnt_hi == 0.0 &&
           inv_lo == 0.0 && mnt_lo == 0.0;
}

TimeStructure TimeStructure::from_days(const std::array<int, kTypicalDays>& days) {
    TimeStructure t;
    t.td_day_of_year = days;
    t.td_weight.fill(0.0);
    for (int d = 0; d < 365; ++d) {
        int best = 0;
        int best_dist = 1000;
        for (int k = 0; k < kTypicalDays; ++k) {
            int diff = std::abs((d + 1) - days[k]);
            int dist = std::min(diff, 365 - diff); // circular distance
            if (dist < best_dist) {
                best_dist = dist;
                best = k;
            }
        }
        t.day_to_td[d] = best;
        t.td_weight[best] += 1.0;
    }
    return t;
}

int ModelDefinition::layer_index(const std::string& id) const {
    for (std::size_t i = 0; i < layers.size(); ++i)
        if (layers[i].id == id) return static_cast<int>(i);
    throw MissingReference("unknown layer '" + id + "'");
}

const Layer& ModelDefinition::layer(const std::string& id) const {
    return layers[layer_index(id)];
}

const Timeseries& ModelDefinition::series(const std::string& id) const {
    auto it = timeseries.find(id);
    if (it == timeseries.end()) throw MissingReference("unknown timeseries '" + id + "'");
    return it->second;
}

std::vector<UncertainSlot> ModelDefinition::uncertain_slots() const {
    std::vector<UncertainSlot> out;
    auto add = [&out](const std::string& name, const UncertainValue& v) {
        if (!v.is_fixed()) out.push_back({name, &v});
    };
    add("general.i_rate", general.i_rate);
    add("general.recycling_pct", general.recycling_pct);
    add("general.public_mobility_pct", general.public_mobility_pct);
    add("general.dhn_pct", general.dhn_pct);
    add("general.ntc_gw", general.ntc_gw);
    add("general.co2_extra", general.co2_extra);
    for (const auto& r : resources) {
        add("resource." + r.id + ".cost", r.cost);
        add("resource." + r.id + ".availability", r.availability);
    }
    for (const auto& t : technologies) {
        add("tech." + t.id + ".c_inv", t.c_inv);
        add("tech." + t.id + ".c_maint", t.c_maint);
    }
    for (const auto& s : storages) {
        add("storage." + s.id + ".c_inv", s.c_inv);
        add("storage." + s.id + ".c_maint", s.c_maint);
    }
    for (const auto& g : grids) {
        add("grid." + g.id + ".c_inv", g.c_inv);
        add("grid." + g.id + ".c_maint", g.c_maint);
    }
    for (const auto& d : demands) add("demand." + d.layer + ".annual", d.annual);
    return out;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v << '\n';
    return os.str();
}

namespace {

bool has_layer(const ModelDefinition& m, const std::string& id) {
    for (const auto& l : m.layers)
        if (l.id == id) return true;
    return false;
}

bool has_series(const ModelDefinition& m, const std::string& id) {
    return m.timeseries.count(id) > 0;
}

void check_pct(const UncertainValue& v, const std::string& ctx, std::vector<std::string>& out) {
    auto [lo, hi] = v.bounds();
    if (lo < 0.0 || hi > 100.0) out.push_back(ctx + ": percentage outside [0,100]");
}

} // namespace

ValidationReport validate_model(const ModelDefinition& m) {
    ValidationReport rep;
    auto& out = rep.violations;

    m.general.i_rate.check("general.i_rate", out);
    m.general.recycling_pct.check("general.recycling_pct", out);
    m.general.public_mobility_pct.check("general.public_mobility_pct", out);
    m.general.dhn_pct.check("general.dhn_pct", out);
    m.general.ntc_gw.check("general.ntc_gw", out);
    m.general.co2_extra.check("general.co2_extra", out);
    check_pct(m.general.recycling_pct, "general.recycling_pct", out);
    check_pct(m.general.public_mobility_pct, "general.public_mobility_pct", out);
    check_pct(m.general.dhn_pct, "general.dhn_pct", out);

    for (const auto& r : m.resources) {
        const std::string ctx = "resource." + r.id;
        r.cost.check(ctx + ".cost", out);
        r.availability.check(ctx + ".availability", out);
        if (r.availability.bounds().first < 0.0)
            out.push_back(ctx + ": availability can resolve negative");
        if (r.carbon_intensity < 0.0) out.push_back(ctx + ": negative carbon intensity");
        if (!has_layer(m, r.layer)) out.push_back(ctx + ": unknown layer '" + r.layer + "'");
        if (!r.capacity_factor_series.empty() && !has_series(m, r.capacity_factor_series))
            out.push_back(ctx + ": unknown timeseries '" + r.capacity_factor_series + "'");
    }

    for (const auto& t : m.technologies) {
        const std::string ctx = "tech." + t.id;
        t.c_inv.check(ctx + ".c_inv", out);
        t.c_maint.check(ctx + ".c_maint", out);
        if (!(t.f_min <= t.f_max)) out.push_back(ctx + ": f_min exceeds f_max");
        if (!(t.lifetime_y > 0)) out.push_back(ctx + ": nonpositive lifetime");
        if (t.modes.empty()) out.push_back(ctx + ": no operating modes");
        if (!has_layer(m, t.main_layer))
            out.push_back(ctx + ": unknown main layer '" + t.main_layer + "'");
        for (std::size_t k = 0; k < t.modes.size(); ++k) {
            auto it = t.modes[k].find(t.main_layer);
            if (it == t.modes[k].end() || it->second != 1.0)
                out.push_back(ctx + ": mode " + std::to_string(k) +
                              " lacks the +1 main-output convention");
            for (const auto& [layer, coeff] : t.modes[k]) {
                (void)coeff;
                if (!has_layer(m, layer))
                    out.push_back(ctx + ": mode references unknown layer '" + layer + "'");
            }
        }
        if (!t.c_p_series.empty() && !has_series(m, t.c_p_series))
            out.push_back(ctx + ": unknown capacity-factor series '" + t.c_p_series + "'");
        if (t.c_p_series.empty() && !(t.c_p >= 0.0 && t.c_p <= 1.0))
            out.push_back(ctx + ": availability factor outside [0,1]");
        if (t.f_perc) {
            if (!has_layer(m, t.f_perc->layer))
                out.push_back(ctx + ": f_perc references unknown layer");
            if (!(t.f_perc->lo <= t.f_perc->hi))
                out.push_back(ctx + ": f_perc lower share exceeds upper");
        }
    }

    for (const auto& s : m.storages) {
        const std::string ctx = "storage." + s.id;
        s.c_inv.check(ctx + ".c_inv", out);
        s.c_maint.check(ctx + ".c_maint", out);
        if (!(s.eta_in > 0.0 && s.eta_in <= 1.0))
            out.push_back(ctx + ": charge efficiency out of range");
        if (!(s.eta_out > 0.0 && s.eta_out <= 1.0))
            out.push_back(ctx + ": discharge efficiency out of range");
        if (!(s.s_loss >= 0.0 && s.s_loss < 1.0))
            out.push_back(ctx + ": storage loss out of range");
        if (!(s.t_charge_h > 0.0 && s.t_discharge_h > 0.0))
            out.push_back(ctx + ": nonpositive charge or discharge time");
        if (!(s.s_avail > 0.0 && s.s_avail <= 1.0))
            out.push_back(ctx + ": availability share out of range");
        if (!(s.f_min <= s.f_max)) out.push_back(ctx + ": f_min exceeds f_max");
        if (!has_layer(m, s.layer)) out.push_back(ctx + ": unknown layer '" + s.layer + "'");
    }

    for (const auto& g : m.grids) {
        const std::string ctx = "grid." + g.id;
        g.c_inv.check(ctx + ".c_inv", out);
        g.c_maint.check(ctx + ".c_maint", out);
        if (!(g.loss_pct >= 0.0 && g.loss_pct < 1.0))
            out.push_back(ctx + ": losses out of range");
        if (!has_layer(m, g.layer)) out.push_back(ctx + ": unknown layer '" + g.layer + "'");
    }

    for (const auto& d : m.demands) {
        const std::string ctx = "demand." + d.layer;
        d.annual.check(ctx + ".annual", out);
        if (!has_layer(m, d.layer)) out.push_back(ctx + ": unknown layer");
        if (!d.split_layer.empty() && !has_layer(m, d.split_layer))
            out.push_back(ctx + ": unknown split layer '" + d.split_layer + "'");
        if (!d.profile.empty()) {
            if (!has_series(m, d.profile)) {
                out.push_back(ctx + ": unknown profile '" + d.profile + "'");
            } else {
                const Timeseries& ts = m.series(d.profile);
                double sum = 0.0;
                for (int td = 0; td < TimeStructure::kTypicalDays; ++td)
                    for (int h = 0; h < TimeStructure::kHoursPerDay; ++h)
                        sum += m.time.td_weight[td] * ts.at(td, h);
                if (std::abs(sum - 1.0) > 1e-9)
                    out.push_back(ctx + ": profile weights over the year sum to " +
                                  std::to_string(sum) + ", expected 1 (year coverage)");
            }
        }
    }

    double weight_sum = 0.0;
    for (double w : m.time.td_weight) weight_sum += w;
    if (std::abs(weight_sum - 365.0) > 1e-9)
        out.push_back("time: typical-day weights sum to " + std::to_string(weight_sum) +
                      ", expected 365 (year coverage)");
    for (int d = 0; d < 365; ++d)
        if (m.time.day_to_td[d] < 0 || m.time.day_to_td[d] >= TimeStructure::kTypicalDays)
            out.push_back("time: day " + std::to_string(d + 1) + " maps to no typical day");

    auto slots = m.uncertain_slots();
    if (m.uncertain_order.size() != slots.size()) {
        out.push_back("uncertain_order: lists " + std::to_string(m.uncertain_order.size()) +
                      " parameters, model declares " + std::to_string(slots.size()));
    } else {
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (m.uncertain_order[i] != slots[i].name) {
                out.push_back("uncertain_order[" + std::to_string(i) + "] = '" +
                              m.uncertain_order[i] + "', expected '" + slots[i].name + "'");
                break;
            }
    }
    return rep;
}

double annualization_factor(double i_rate, double lifetime_y) {
    if (lifetime_y < 1.0) throw DomainError("annualization_factor: lifetime below one year");
    if (i_rate < 0.0) throw DomainError("annualization_factor: negative interest rate");
    if (i_rate == 0.0) return 1.0 / lifetime_y;
    double p = std::pow(1.0 + i_rate, lifetime_y);
    return i_rate * p / (p - 1.0);
}

ConcreteModel resolve_scenario(const ModelDefinition& m, const std::vector<double>& u) {
    auto slots = m.uncertain_slots();
    if (u.size() != slots.size())
        throw DimensionMismatch("resolve_scenario: point has " + std::to_string(u.size()) +
                                " coordinates, model has " + std::to_string(slots.size()) +
                                " uncertain parameters");
    std::map<const UncertainValue*, double> resolved;
    for (std::size_t i = 0; i < slots.size(); ++i)
        resolved[slots[i].value] = slots[i].value->resolve(u[i]);
    auto value_of = [&resolved](const UncertainValue& v) {
        auto it = resolved.find(&v);
        return it != resolved.end() ? it->second : v.a;
    };

    ConcreteModel cm;
    cm.def = &m;
    cm.i_rate = value_of(m.general.i_rate);
    cm.recycling_pct = value_of(m.general.recycling_pct);
    cm.public_mobility_pct = value_of(m.general.public_mobility_pct);
    cm.dhn_pct = value_of(m.general.dhn_pct);
    cm.ntc_gw = value_of(m.general.ntc_gw);
    cm.co2_extra = value_of(m.general.co2_extra);
    cm.co2_compensation_cost = m.general.co2_compensation_cost;
    cm.net_zero = m.general.net_zero;

    cm.resources.reserve(m.resources.size());
    for (const auto& r : m.resources)
        cm.resources.push_back({value_of(r.cost), value_of(r.availability)});
    cm.technologies.reserve(m.technologies.size());
    for (const auto& t : m.technologies)
        cm.technologies.push_back({value_of(t.c_inv), value_of(t.c_maint)});
    cm.storages.reserve(m.storages.size());
    for (const auto& s : m.storages)
        cm.storages.push_back({value_of(s.c_inv), value_of(s.c_maint)});
    cm.grids.reserve(m.grids.size());
    for (const auto& g : m.grids) cm.grids.push_back({value_of(g.c_inv), value_of(g.c_maint)});

    auto share_value = [&cm](const std::string& name) {
        if (name == "dhn_pct") return cm.dhn_pct;
        if (name == "public_mobility_pct") return cm.public_mobility_pct;
        if (name == "recycling_pct") return cm.recycling_pct;
        throw MissingReference("unknown general share parameter '" + name + "'");
    };
    for (const auto& d : m.demands) {
        double total = value_of(d.annual);
        if (d.split_layer.empty()) {
            cm.demands.push_back({d.layer, total, d.profile});
        } else {
            double share = share_value(d.split_share_general) / 100.0;
            cm.demands.push_back({d.layer, total * (1.0 - share), d.profile});
            cm.demands.push_back({d.split_layer, total * share, d.profile});
        }
    }
    return cm;
}

} // namespace rplan
