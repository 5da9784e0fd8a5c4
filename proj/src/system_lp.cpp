#include "rplan/system_lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace rplan {

namespace {

constexpr int kTD = TimeStructure::kTypicalDays;
constexpr int kH = TimeStructure::kHoursPerDay;
constexpr int kSlots = kTD * kH;

std::string slot_tag(int td, int h) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d_%02d", td + 1, h);
    return buf;
}

struct Builder {
    const ConcreteModel& cm;
    const ModelDefinition& def;
    LinearProgram lp;
    VariableLayout lay;

    double hours_per_year = 0.0;
    double af_rate = 0.0; // annualization at the sampled discount rate

    std::vector<double> demand_per_layer;               // annual, post-split
    std::vector<double> loss_factor;                    // 1/(1-loss) per layer
    std::vector<std::vector<SparseEntry>> hourly_balance; // layer*288 entry lists
    std::vector<std::vector<SparseEntry>> annual_balance; // per layer
    std::vector<std::vector<SparseEntry>> grid_load;       // per grid, per slot
    std::vector<SparseEntry> atm_credit;                   // biogenic credits [kt/y]

    explicit Builder(const ConcreteModel& c) : cm(c), def(*c.def) {
        for (double w : def.time.td_weight) hours_per_year += w * kH;
    }

    double weight(int td) const { return def.time.td_weight[td]; }

    double cp_of(const Technology& t, int td, int h) const {
        return t.c_p_series.empty() ? t.c_p : def.series(t.c_p_series).at(td, h);
    }

    double cp_floor(const Technology& t) const {
        if (t.c_p_series.empty()) return t.c_p;
        const Timeseries& ts = def.series(t.c_p_series);
        return *std::min_element(ts.values.begin(), ts.values.end());
    }

    bool layer_hourly(int li) const { return def.layers[li].hourly; }

    void balance_add(int li, int td, int h, int var, double coeff) {
        if (coeff == 0.0) return;
        if (layer_hourly(li))
            hourly_balance[li * kSlots + td * kH + h].push_back({var, coeff});
        else
            annual_balance[li].push_back({var, coeff * weight(td)});
    }

    // year-round contribution of a per-hour-constant variable
    void balance_add_const(int li, int var, double coeff_per_hour) {
        if (coeff_per_hour == 0.0) return;
        if (layer_hourly(li)) {
            for (int td = 0; td < kTD; ++td)
                for (int h = 0; h < kH; ++h)
                    hourly_balance[li * kSlots + td * kH + h].push_back({var, coeff_per_hour});
        } else {
            annual_balance[li].push_back({var, coeff_per_hour * hours_per_year});
        }
    }

    void structural_supply_check() const {
        std::set<std::string> demanded;
        for (const auto& d : cm.demands)
            if (d.annual > 0.0) demanded.insert(d.layer);
        for (const auto& layer_id : demanded) {
            bool supplied = false;
            for (const auto& t : def.technologies)
                for (const auto& mode : t.modes) {
                    auto it = mode.find(layer_id);
                    if (it != mode.end() && it->second > 0.0) supplied = true;
                }
            for (const auto& r : def.resources)
                if (r.layer == layer_id && r.kind != ResourceKind::ExportRemoval)
                    supplied = true;
            if (!supplied)
                throw ModelError("demand layer '" + layer_id + "' has no feasible supplier");
        }
    }

    void build() {
        structural_supply_check();
        af_rate = annualization_factor(cm.i_rate, 1.0); // placeholder, per-entity below

        const int L = static_cast<int>(def.layers.size());
        hourly_balance.assign(static_cast<std::size_t>(L) * kSlots, {});
        annual_balance.assign(L, {});
        demand_per_layer.assign(L, 0.0);
        loss_factor.assign(L, 1.0);
        for (std::size_t g = 0; g < def.grids.size(); ++g) {
            const Grid& gr = def.grids[g];
            if (gr.loss_pct > 0.0) loss_factor[def.layer_index(gr.layer)] = 1.0 / (1.0 - gr.loss_pct);
        }
        grid_load.assign(def.grids.size() * kSlots, {});

        add_technologies();
        add_resources();
        add_storages();
        add_grids();
        assemble_balances();
        add_fperc_rows();
        finalize_groups();
    }

    double annualized(double c_inv, double c_maint, double lifetime) const {
        return annualization_factor(cm.i_rate, lifetime) * c_inv + c_maint;
    }

    std::vector<int> grid_of_layer; // filled in add_grids' preparation

    void add_grid_load(int li, int td, int h, int var, double coeff) {
        for (std::size_t g = 0; g < def.grids.size(); ++g)
            if (def.layer_index(def.grids[g].layer) == li && coeff > 0.0)
                grid_load[g * kSlots + td * kH + h].push_back({var, coeff});
    }

    void add_grid_load_const(int li, int var, double coeff) {
        if (coeff <= 0.0) return;
        for (std::size_t g = 0; g < def.grids.size(); ++g)
            if (def.layer_index(def.grids[g].layer) == li)
                for (int s = 0; s < kSlots; ++s)
                    grid_load[g * kSlots + s].push_back({var, coeff});
    }

    void add_technologies() {
        const int T = static_cast<int>(def.technologies.size());
        lay.tech_f.assign(T, -1);
        lay.tech_act_base.assign(T, -1);
        lay.tech_modes.assign(T, 0);
        lay.tech_const.assign(T, 0);

        for (int ti = 0; ti < T; ++ti) {
            const Technology& t = def.technologies[ti];
            const auto& costs = cm.technologies[ti];
            lay.tech_modes[ti] = static_cast<int>(t.modes.size());
            lay.tech_const[ti] = t.constant_operation ? 1 : 0;

            if (!t.uncapacitated())
                lay.tech_f[ti] = lp.add_variable(
                    "F." + t.id, t.f_min, t.f_max,
                    annualized(costs.c_inv, costs.c_maint, t.lifetime_y));

            const bool fixed_cap = t.f_min == t.f_max && lay.tech_f[ti] >= 0;
            const bool single_mode = t.modes.size() == 1;

            if (t.constant_operation) {
                lay.tech_act_base[ti] = lp.num_vars();
                for (std::size_t m = 0; m < t.modes.size(); ++m) {
                    double ub = fixed_cap && single_mode ? cp_floor(t) * t.f_min : kInf;
                    int v = lp.add_variable("act." + t.id + "." + std::to_string(m), 0.0, ub, 0.0);
                    for (const auto& [layer_id, coeff] : t.modes[m]) {
                        int li = def.layer_index(layer_id);
                        balance_add_const(li, v, coeff);
                        add_grid_load_const(li, v, coeff);
                    }
                }
                if (lay.tech_f[ti] >= 0 && !(fixed_cap && single_mode)) {
                    std::vector<SparseEntry> ent;
                    for (std::size_t m = 0; m < t.modes.size(); ++m)
                        ent.push_back({lay.tech_act_base[ti] + static_cast<int>(m), 1.0});
                    ent.push_back({lay.tech_f[ti], -cp_floor(t)});
                    lp.add_row("cap." + t.id, RowSense::LE, 0.0, std::move(ent));
                }
                continue;
            }

            lay.tech_act_base[ti] = lp.num_vars();
            for (std::size_t m = 0; m < t.modes.size(); ++m)
                for (int td = 0; td < kTD; ++td)
                    for (int h = 0; h < kH; ++h) {
                        double ub = kInf;
                        if (fixed_cap && single_mode) ub = cp_of(t, td, h) * t.f_min;
                        int v = lp.add_variable("act." + t.id + "." + std::to_string(m) + "." +
                                                    slot_tag(td, h),
                                                0.0, ub, 0.0);
                        for (const auto& [layer_id, coeff] : t.modes[m]) {
                            int li = def.layer_index(layer_id);
                            balance_add(li, td, h, v, coeff);
                            if (layer_hourly(li)) add_grid_load(li, td, h, v, coeff);
                        }
                    }

            if (lay.tech_f[ti] >= 0 && !(fixed_cap && single_mode)) {
                for (int td = 0; td < kTD; ++td)
                    for (int h = 0; h < kH; ++h) {
                        std::vector<SparseEntry> ent;
                        for (std::size_t m = 0; m < t.modes.size(); ++m)
                            ent.push_back({lay.act_var(ti, static_cast<int>(m), td, h), 1.0});
                        ent.push_back({lay.tech_f[ti], -cp_of(t, td, h)});
                        lp.add_row("cap." + t.id + "." + slot_tag(td, h), RowSense::LE, 0.0,
                                   std::move(ent));
                    }
            }
        }
    }

    void add_resources() {
        const int R = static_cast<int>(def.resources.size());
        lay.res_base.assign(R, -1);
        lay.res_kind.assign(R, 'a');

        for (int ri = 0; ri < R; ++ri) {
            const Resource& r = def.resources[ri];
            const auto& vals = cm.resources[ri];
            const int li = def.layer_index(r.layer);
            const double sign = r.kind == ResourceKind::ExportRemoval ? -1.0 : 1.0;
            lay.res_base[ri] = lp.num_vars();

            if (!layer_hourly(li)) {
                lay.res_kind[ri] = 'a';
                double ub = std::isfinite(vals.availability) ? vals.availability : kInf;
                int v = lp.add_variable("res." + r.id, 0.0, ub, vals.cost);
                annual_balance[li].push_back({v, sign});
                if (r.biogenic && r.carbon_intensity > 0.0)
                    atm_credit.push_back({v, -r.carbon_intensity});
            } else if (r.constant_over_year) {
                lay.res_kind[ri] = 'c';
                double ub = std::isfinite(vals.availability) ? vals.availability / hours_per_year
                                                             : kInf;
                if (r.ntc_limited) ub = std::min(ub, cm.ntc_gw);
                int v = lp.add_variable("res." + r.id, 0.0, ub, vals.cost * hours_per_year);
                balance_add_const(li, v, sign);
                if (sign > 0) add_grid_load_const(li, v, 1.0);
                if (r.biogenic && r.carbon_intensity > 0.0)
                    atm_credit.push_back({v, -r.carbon_intensity * hours_per_year});
            } else {
                lay.res_kind[ri] = 'h';
                std::vector<SparseEntry> avail_row;
                for (int td = 0; td < kTD; ++td)
                    for (int h = 0; h < kH; ++h) {
                        double ub = kInf;
                        if (!r.capacity_factor_series.empty())
                            ub = vals.availability *
                                 def.series(r.capacity_factor_series).at(td, h);
                        if (r.ntc_limited) ub = std::min(ub, cm.ntc_gw);
                        int v = lp.add_variable("res." + r.id + "." + slot_tag(td, h), 0.0, ub,
                                                vals.cost * weight(td));
                        balance_add(li, td, h, v, sign);
                        if (sign > 0) add_grid_load(li, td, h, v, 1.0);
                        avail_row.push_back({v, weight(td)});
                        if (r.biogenic && r.carbon_intensity > 0.0)
                            atm_credit.push_back({v, -r.carbon_intensity * weight(td)});
                    }
                // the per-slot series caps already enforce the annual total
                if (std::isfinite(vals.availability) && r.capacity_factor_series.empty())
                    lp.add_row("avail." + r.id, RowSense::LE, vals.availability,
                               std::move(avail_row));
            }
        }
    }

    void add_storages() {
        const int S = static_cast<int>(def.storages.size());
        lay.sto_f.assign(S, -1);
        lay.sto_in.assign(S, -1);
        lay.sto_out.assign(S, -1);
        lay.sto_level.assign(S, -1);
        lay.sto_level_count.assign(S, 0);

        for (int si = 0; si < S; ++si) {
            const StorageTech& s = def.storages[si];
            const auto& costs = cm.storages[si];
            const int li = def.layer_index(s.layer);
            if (!layer_hourly(li))
                throw ModelError("storage '" + s.id + "' sits on annual layer '" + s.layer +
                                 "' (annual layers already carry free storage)");

            const bool fixed_cap = s.f_min == s.f_max;
            lay.sto_f[si] = lp.add_variable("F." + s.id, s.f_min, s.f_max,
                                            annualized(costs.c_inv, costs.c_maint, s.lifetime_y));

            double in_ub = fixed_cap ? s.f_min / s.t_charge_h : kInf;
            double out_ub = fixed_cap ? s.f_min / s.t_discharge_h : kInf;
            double lvl_ub = fixed_cap ? s.s_avail * s.f_min : kInf;

            lay.sto_in[si] = lp.num_vars();
            for (int td = 0; td < kTD; ++td)
                for (int h = 0; h < kH; ++h) {
                    int v = lp.add_variable("sin." + s.id + "." + slot_tag(td, h), 0.0, in_ub, 0.0);
                    balance_add(li, td, h, v, -1.0);
                }
            lay.sto_out[si] = lp.num_vars();
            for (int td = 0; td < kTD; ++td)
                for (int h = 0; h < kH; ++h) {
                    int v =
                        lp.add_variable("sout." + s.id + "." + slot_tag(td, h), 0.0, out_ub, 0.0);
                    balance_add(li, td, h, v, 1.0);
                    add_grid_load(li, td, h, v, 1.0);
                }

            const int n_level = s.cls == StorageClass::Daily ? kSlots : 365;
            lay.sto_level_count[si] = n_level;
            lay.sto_level[si] = lp.num_vars();
            for (int k = 0; k < n_level; ++k)
                lp.add_variable("slvl." + s.id + "." + std::to_string(k), 0.0, lvl_ub, 0.0);

            auto in_var = [&](int td, int h) { return lay.sto_in[si] + td * kH + h; };
            auto out_var = [&](int td, int h) { return lay.sto_out[si] + td * kH + h; };

            if (s.cls == StorageClass::Daily) {
                // cyclic within each typical day: level(h) rolls over at midnight
                for (int td = 0; td < kTD; ++td)
                    for (int h = 0; h < kH; ++h) {
                        int prev = (h + kH - 1) % kH;
                        std::vector<SparseEntry> ent = {
                            {lay.sto_level[si] + td * kH + h, 1.0},
                            {lay.sto_level[si] + td * kH + prev, -(1.0 - s.s_loss)},
                            {in_var(td, h), -s.eta_in},
                            {out_var(td, h), 1.0 / s.eta_out},
                        };
                        lp.add_row("slv." + s.id + "." + slot_tag(td, h), RowSense::EQ, 0.0,
                                   std::move(ent));
                    }
            } else {
                // day-boundary levels chained over the 365-day sequence with
                // annual cyclicity; a free per-TD net-charge variable keeps
                // the chain rows three nonzeros wide
                const double decay = std::pow(1.0 - s.s_loss, kH);
                int delta_base = lp.num_vars();
                for (int td = 0; td < kTD; ++td) {
                    int dv = lp.add_variable("sdl." + s.id + "." + std::to_string(td), -kInf,
                                             kInf, 0.0);
                    std::vector<SparseEntry> ent = {{dv, 1.0}};
                    for (int h = 0; h < kH; ++h) {
                        ent.push_back({in_var(td, h), -s.eta_in});
                        ent.push_back({out_var(td, h), 1.0 / s.eta_out});
                    }
                    lp.add_row("sdlDef." + s.id + "." + std::to_string(td), RowSense::EQ, 0.0,
                               std::move(ent));
                }
                for (int d = 0; d < 365; ++d) {
                    int td = def.time.day_to_td[d];
                    lp.add_row("slv." + s.id + ".d" + std::to_string(d), RowSense::EQ, 0.0,
                               {{lay.sto_level[si] + (d + 1) % 365, 1.0},
                                {lay.sto_level[si] + d, -decay},
                                {delta_base + td, -1.0}});
                }
            }

            if (!fixed_cap) {
                for (int k = 0; k < n_level; ++k)
                    lp.add_row("scap." + s.id + "." + std::to_string(k), RowSense::LE, 0.0,
                               {{lay.sto_level[si] + k, 1.0}, {lay.sto_f[si], -s.s_avail}});
                for (int t = 0; t < kSlots; ++t) {
                    lp.add_row("srin." + s.id + "." + std::to_string(t), RowSense::LE, 0.0,
                               {{lay.sto_in[si] + t, 1.0}, {lay.sto_f[si], -1.0 / s.t_charge_h}});
                    lp.add_row(
                        "srout." + s.id + "." + std::to_string(t), RowSense::LE, 0.0,
                        {{lay.sto_out[si] + t, 1.0}, {lay.sto_f[si], -1.0 / s.t_discharge_h}});
                }
            }
        }
    }

    void add_grids() {
        lay.grid_var.assign(def.grids.size(), -1);
        for (std::size_t g = 0; g < def.grids.size(); ++g) {
            const Grid& gr = def.grids[g];
            const auto& costs = cm.grids[g];
            lay.grid_var[g] = lp.add_variable(
                "G." + gr.id, 0.0, kInf, annualized(costs.c_inv, costs.c_maint, gr.lifetime_y));
        }
    }

    void assemble_balances() {
        // demands per layer, inflated by grid losses where applicable
        for (const auto& d : cm.demands) {
            int li = def.layer_index(d.layer);
            demand_per_layer[li] += d.annual * loss_factor[li];
        }

        const int L = static_cast<int>(def.layers.size());
        for (int li = 0; li < L; ++li) {
            const Layer& layer = def.layers[li];
            if (layer.id == "CO2_ATM") continue; // handled by the net-zero row
            if (layer.hourly) {
                for (int td = 0; td < kTD; ++td)
                    for (int h = 0; h < kH; ++h) {
                        double rhs = 0.0;
                        for (const auto& d : cm.demands) {
                            if (def.layer_index(d.layer) != li) continue;
                            double share = d.profile.empty()
                                               ? 1.0 / hours_per_year
                                               : def.series(d.profile).at(td, h);
                            rhs += d.annual * loss_factor[li] * share;
                        }
                        lp.add_row("bal." + layer.id + "." + slot_tag(td, h), RowSense::EQ, rhs,
                                   std::move(hourly_balance[li * kSlots + td * kH + h]));
                    }
            } else {
                lp.add_row("bal." + layer.id, RowSense::EQ, demand_per_layer[li],
                           std::move(annual_balance[li]));
            }
        }

        // net-zero: annual atmosphere balance offsets the unabatable inflow
        if (cm.net_zero) {
            int li = def.layer_index("CO2_ATM");
            std::vector<SparseEntry> ent = std::move(annual_balance[li]);
            for (const auto& e : atm_credit) ent.push_back(e);
            lp.add_row("netzero", RowSense::EQ, -cm.co2_extra, std::move(ent));
        }

        for (std::size_t g = 0; g < def.grids.size(); ++g)
            for (int td = 0; td < kTD; ++td)
                for (int h = 0; h < kH; ++h) {
                    auto ent = std::move(grid_load[g * kSlots + td * kH + h]);
                    if (ent.empty()) continue;
                    ent.push_back({lay.grid_var[g], -1.0});
                    lp.add_row("grid." + def.grids[g].id + "." + slot_tag(td, h), RowSense::LE,
                               0.0, std::move(ent));
                }
    }

    // annual production of tech ti into layer li as a linear form
    std::vector<SparseEntry> annual_output_expr(int ti, int li) const {
        std::vector<SparseEntry> expr;
        const Technology& t = def.technologies[ti];
        for (std::size_t m = 0; m < t.modes.size(); ++m) {
            auto it = t.modes[m].find(def.layers[li].id);
            if (it == t.modes[m].end() || it->second == 0.0) continue;
            double coeff = it->second;
            if (t.constant_operation) {
                expr.push_back({lay.tech_act_base[ti] + static_cast<int>(m),
                                coeff * hours_per_year});
            } else {
                for (int td = 0; td < kTD; ++td)
                    for (int h = 0; h < kH; ++h)
                        expr.push_back(
                            {lay.act_var(ti, static_cast<int>(m), td, h), coeff * weight(td)});
            }
        }
        return expr;
    }

    void add_fperc_rows() {
        for (std::size_t ti = 0; ti < def.technologies.size(); ++ti) {
            const Technology& t = def.technologies[ti];
            if (!t.f_perc) continue;
            int li = def.layer_index(t.f_perc->layer);
            double demand = 0.0;
            for (const auto& d : cm.demands)
                if (def.layer_index(d.layer) == li) demand += d.annual;
            double hi = t.f_perc->hi;
            if (!t.f_perc->hi_general.empty()) {
                if (t.f_perc->hi_general == "recycling_pct")
                    hi = cm.recycling_pct / 100.0;
                else if (t.f_perc->hi_general == "public_mobility_pct")
                    hi = cm.public_mobility_pct / 100.0;
                else if (t.f_perc->hi_general == "dhn_pct")
                    hi = cm.dhn_pct / 100.0;
                else
                    throw ModelError("tech '" + t.id + "': unknown f_perc share parameter '" +
                                     t.f_perc->hi_general + "'");
            }
            auto expr = annual_output_expr(static_cast<int>(ti), li);
            if (expr.empty())
                throw ModelError("tech '" + t.id + "': f_perc layer it never produces into");
            if (t.f_perc->lo > 0.0)
                lp.add_row("fperc_lo." + t.id, RowSense::GE, t.f_perc->lo * demand, expr);
            if (hi < 1.0)
                lp.add_row("fperc_hi." + t.id, RowSense::LE, hi * demand, std::move(expr));
        }
    }

    void finalize_groups() {
        std::vector<int> biomass_layers;
        for (std::size_t li = 0; li < def.layers.size(); ++li)
            if (def.layers[li].biomass) biomass_layers.push_back(static_cast<int>(li));

        for (std::size_t ti = 0; ti < def.technologies.size(); ++ti) {
            const Technology& t = def.technologies[ti];
            int gi = -1;
            if (!t.group.empty()) gi = output_index(t.group);
            for (std::size_t m = 0; m < t.modes.size(); ++m) {
                for (int li : biomass_layers) {
                    auto it = t.modes[m].find(def.layers[li].id);
                    if (it == t.modes[m].end() || it->second >= 0.0) continue;
                    double draw = -it->second; // biomass input per unit of activity
                    if (t.constant_operation) {
                        SparseEntry e{lay.tech_act_base[static_cast<int>(ti)] + static_cast<int>(m),
                                      draw * hours_per_year};
                        if (gi >= 0) lay.group_expr[gi].push_back(e);
                        lay.total_biomass_expr.push_back(e);
                    } else {
                        for (int td = 0; td < kTD; ++td)
                            for (int h = 0; h < kH; ++h) {
                                SparseEntry e{
                                    lay.act_var(static_cast<int>(ti), static_cast<int>(m), td, h),
                                    draw * weight(td)};
                                if (gi >= 0) lay.group_expr[gi].push_back(e);
                                lay.total_biomass_expr.push_back(e);
                            }
                    }
                }
            }
        }

        for (std::size_t ri = 0; ri < def.resources.size(); ++ri) {
            const Resource& r = def.resources[ri];
            if (!def.layer(r.layer).biomass || r.kind == ResourceKind::ExportRemoval) continue;
            lay.biomass_availability += cm.resources[ri].availability;
        }
        lay.num_vars = lp.num_vars();
    }
};

} // namespace

std::pair<LinearProgram, VariableLayout> build_lp(const ConcreteModel& cm) {
    if (cm.def == nullptr) throw ModelError("build_lp: concrete model has no definition");
    Builder b(cm);
    b.build();
    return {std::move(b.lp), std::move(b.lay)};
}

double total_cost(const Solution& sol) {
    if (sol.status != SolveStatus::Optimal)
        throw StatusError("total_cost: solution is not optimal");
    return sol.objective;
}

std::array<double, kNumOutputs> outputs_of_interest(const Solution& sol,
                                                    const VariableLayout& layout) {
    if (sol.status != SolveStatus::Optimal)
        throw StatusError("outputs_of_interest: solution is not optimal");
    std::array<double, kNumOutputs> y{};
    for (int g = 0; g < kNumOutputs; ++g) {
        double v = 0.0;
        for (const auto& e : layout.group_expr[g]) v += e.value * sol.primal[e.col];
        y[g] = v / 1000.0; // GWh -> TWh
    }
    return y;
}

double total_biomass_use(const Solution& sol, const VariableLayout& layout) {
    double v = 0.0;
    for (const auto& e : layout.total_biomass_expr) v += e.value * sol.primal[e.col];
    return v;
}

double energy_balance_residual(const ConcreteModel& cm, const LinearProgram& lp,
                               const VariableLayout& layout, const Solution& sol) {
    (void)cm;
    (void)layout;
    double worst = 0.0;
    for (int i = 0; i < lp.num_rows(); ++i) {
        if (lp.row_names()[i].rfind("bal.", 0) != 0) continue;
        double ax = 0.0;
        for (const auto& e : lp.rows()[i]) ax += e.value * sol.primal[e.col];
        worst = std::max(worst, std::abs(ax - lp.rhs()[i]));
    }
    return worst;
}

double seasonal_cycle_residual(const ConcreteModel& cm, const VariableLayout& layout,
                               const Solution& sol) {
    const ModelDefinition& def = *cm.def;
    double worst = 0.0;
    for (std::size_t si = 0; si < def.storages.size(); ++si) {
        const StorageTech& s = def.storages[si];
        if (s.cls != StorageClass::Seasonal) continue;
        const double decay = std::pow(1.0 - s.s_loss, TimeStructure::kHoursPerDay);
        double level = sol.primal[layout.sto_level[si]]; // start of day 0
        const double start = level;
        for (int d = 0; d < 365; ++d) {
            int td = def.time.day_to_td[d];
            double delta = 0.0;
            for (int h = 0; h < TimeStructure::kHoursPerDay; ++h) {
                delta += s.eta_in * sol.primal[layout.sto_in[si] + td * 24 + h];
                delta -= sol.primal[layout.sto_out[si] + td * 24 + h] / s.eta_out;
            }
            level = level * decay + delta;
        }
        worst = std::max(worst, std::abs(level - start));
    }
    return worst;
}

double co2_atmosphere_balance(const ConcreteModel& cm, const VariableLayout& layout,
                              const Solution& sol) {
    const ModelDefinition& def = *cm.def;
    double flow = cm.co2_extra;
    const int li = def.layer_index("CO2_ATM");
    const std::string& atm = def.layers[li].id;

    for (std::size_t ti = 0; ti < def.technologies.size(); ++ti) {
        const Technology& t = def.technologies[ti];
        for (std::size_t m = 0; m < t.modes.size(); ++m) {
            auto it = t.modes[m].find(atm);
            if (it == t.modes[m].end()) continue;
            if (t.constant_operation) {
                flow += it->second * 8760.0 *
                        sol.primal[layout.tech_act_base[ti] + static_cast<int>(m)];
            } else {
                for (int td = 0; td < 12; ++td)
                    for (int h = 0; h < 24; ++h)
                        flow += it->second * def.time.td_weight[td] *
                                sol.primal[layout.act_var(static_cast<int>(ti),
                                                          static_cast<int>(m), td, h)];
            }
        }
    }
    for (std::size_t ri = 0; ri < def.resources.size(); ++ri) {
        const Resource& r = def.resources[ri];
        double use = 0.0;
        if (layout.res_kind[ri] == 'h') {
            for (int td = 0; td < 12; ++td)
                for (int h = 0; h < 24; ++h)
                    use += def.time.td_weight[td] * sol.primal[layout.res_base[ri] + td * 24 + h];
        } else if (layout.res_kind[ri] == 'c') {
            use = sol.primal[layout.res_base[ri]] * 8760.0;
        } else {
            use = sol.primal[layout.res_base[ri]];
        }
        if (r.layer == atm) flow += (r.kind == ResourceKind::ExportRemoval ? -1.0 : 1.0) * use;
        if (r.biogenic && r.carbon_intensity > 0.0) flow -= r.carbon_intensity * use;
    }
    return flow;
}

std::string flows_to_csv(const ConcreteModel& cm, const VariableLayout& layout,
                         const Solution& sol) {
    const ModelDefinition& def = *cm.def;
    std::ostringstream os;
    os << "tech,mode,td,hour,value\n";
    char buf[64];
    for (std::size_t ti = 0; ti < def.technologies.size(); ++ti) {
        const Technology& t = def.technologies[ti];
        for (int m = 0; m < layout.tech_modes[ti]; ++m)
            for (int td = 0; td < 12; ++td)
                for (int h = 0; h < 24; ++h) {
                    double v = sol.primal[layout.act_var(static_cast<int>(ti), m, td, h)];
                    std::snprintf(buf, sizeof buf, "%.17g", v);
                    os << t.id << ',' << m << ',' << td + 1 << ',' << h << ',' << buf << '\n';
                }
    }
    return os.str();
}

} // namespace rplan
