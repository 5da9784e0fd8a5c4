#!/usr/bin/env python3
"""Generates swiss-lite.json and its typical-day timeseries.

Internal units: energy GWh, CO2/char kt, passenger mobility Mpkm, freight
Mtkm, money CHF. Costs come from the published Swiss 2050 data tables
(CHF/kWh -> CHF/GWh, CHF/t -> CHF/kt, TWh -> GWh, Mt -> kt); technology
conversion coefficients are representative values with per-mode carbon
closure enforced below.
"""

import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))
TD_DAYS = [21, 49, 93, 112, 181, 192, 206, 258, 259, 313, 318, 351]

# carbon content per layer unit (kt CO2-eq per GWh, or per kt for CO2/char)
CARBON = {
    "NG": 0.2, "FUEL": 0.265, "WOOD": 0.39, "WET_BIO": 0.36, "DIGESTATE": 0.36,
    "CHEMICALS": 0.26, "PLASTIC_WASTE": 0.26, "CHAR": 1.0,
    "CO2_IND": 1.0, "CO2_PURE": 1.0, "CO2_ATM": 1.0,
}


def day_to_td():
    assign = []
    for d in range(1, 366):
        best, best_dist = 0, 1000
        for k, td in enumerate(TD_DAYS):
            diff = abs(d - td)
            dist = min(diff, 365 - diff)
            if dist < best_dist:
                best_dist, best = dist, k
        assign.append(best)
    return assign


ASSIGN = day_to_td()
WEIGHT = [float(ASSIGN.count(k)) for k in range(12)]
assert sum(WEIGHT) == 365.0


def season(day, peak_day, amplitude):
    """1 + amplitude*cos centered on peak_day."""
    return 1.0 + amplitude * math.cos(2 * math.pi * (day - peak_day) / 365.0)


def normalize_share(vals):
    total = sum(WEIGHT[td] * vals[td * 24 + h] for td in range(12) for h in range(24))
    out = [v / total for v in vals]
    check = sum(WEIGHT[td] * out[td * 24 + h] for td in range(12) for h in range(24))
    assert abs(check - 1.0) < 1e-12, check
    return out


def write_series(name, vals):
    path = os.path.join(HERE, "timeseries", name + ".csv")
    with open(path, "w") as f:
        f.write("td,hour,value\n")
        for td in range(12):
            for h in range(24):
                f.write("%d,%d,%.17g\n" % (td + 1, h, vals[td * 24 + h]))


def gen_timeseries():
    elec, heat, proc, mob, pv, wind, river, inflow = ([] for _ in range(8))
    for td in range(12):
        day = TD_DAYS[td]
        for h in range(24):
            diurnal = 1.0 + 0.25 * math.sin(math.pi * (h - 5) / 14.0) if 5 <= h <= 22 else 0.82
            elec.append(season(day, 15, 0.12) * diurnal)

            morning = math.exp(-((h - 7.5) ** 2) / 8.0)
            evening = math.exp(-((h - 19.0) ** 2) / 12.0)
            heat.append(max(season(day, 15, 0.95), 0.02) * (0.55 + 0.9 * morning + 0.7 * evening))

            proc.append(1.25 if 6 <= h <= 20 else 0.55)

            commute = (1.8 * math.exp(-((h - 7.8) ** 2) / 2.2)
                       + 2.0 * math.exp(-((h - 17.5) ** 2) / 3.0))
            mob.append(0.12 + commute if 5 <= h <= 23 else 0.03)

            solar_day = max(0.0, math.sin(math.pi * (h - 6.0) / 13.0)) if 6 <= h <= 19 else 0.0
            pv.append(season(day, 172, 0.55) * solar_day)

            wind.append(season(day, 15, 0.45) * (0.85 + 0.15 * math.sin(2 * math.pi * h / 24.0)))

            river.append(season(day, 187, 0.65))
            inflow.append(max(season(day, 160, 1.35), 0.03))

    # capacity factors calibrated to the published full-load hours
    def scale_cf(vals, target_flh):
        mean = sum(WEIGHT[td] * vals[td * 24 + h] for td in range(12) for h in range(24)) / 8760.0
        factor = (target_flh / 8760.0) / mean
        out = [min(v * factor, 1.0) for v in vals]
        return out

    write_series("elec_demand", normalize_share(elec))
    write_series("heat_lt", normalize_share(heat))
    write_series("process_heat", normalize_share(proc))
    write_series("mobility_day", normalize_share(mob))
    write_series("pv_cf", scale_cf(pv, 1226.8))
    write_series("wind_cf", scale_cf(wind, 2014.8))
    write_series("river_cf", scale_cf(river, 0.47 * 8760))
    write_series("inflow_dam", normalize_share(inflow))


def U(form, *vals):
    return {form: list(vals)}


def carbon_balance(mode):
    bal = 0.0
    for layer, coeff in mode.items():
        bal += CARBON.get(layer, 0.0) * coeff
    return bal


def tech(tid, main, modes, c_inv_nom, tau, group=None, cf=None, f_min=0.0, f_max="inf",
         const=False, f_perc=None, fixed_cost=False, maint_nom=None, close_carbon=True):
    if close_carbon:
        for mode in modes:
            # residual fossil/biogenic carbon leaves through the industrial
            # point-source layer so every mode conserves carbon exactly
            bal = carbon_balance(mode)
            if abs(bal) > 1e-12:
                mode["CO2_IND"] = mode.get("CO2_IND", 0.0) - bal
                assert abs(carbon_balance(mode)) < 1e-12, (tid, mode)
    out = {
        "id": tid, "main_layer": main, "modes": modes,
        "c_inv": {"fixed": c_inv_nom} if fixed_cost else U("nominal_sym", c_inv_nom, 30),
        "lifetime_y": tau,
    }
    mean_inv = c_inv_nom
    if maint_nom is not None:
        out["c_maint"] = {"fixed": maint_nom} if fixed_cost else U("nominal_sym", maint_nom, 30)
    elif mean_inv > 0:
        out["c_maint"] = U("range", 0.02 * mean_inv, 0.05 * mean_inv)
    else:
        out["c_maint"] = 0.0
    if cf is not None:
        out["c_p"] = cf
    out["f_min"] = f_min
    out["f_max"] = f_max
    if const:
        out["constant_operation"] = True
    if group:
        out["group"] = group
    if f_perc:
        out["f_perc"] = f_perc
    return out


def build_model():
    layers = [
        # hourly carriers
        {"id": "ELECTRICITY", "unit": "GWh", "hourly": True},
        {"id": "HEAT_LT_DEC", "unit": "GWh", "hourly": True},
        {"id": "HEAT_LT_DHN", "unit": "GWh", "hourly": True},
        {"id": "HEAT_HT", "unit": "GWh", "hourly": True},
        {"id": "MOB_PRIV", "unit": "Mpkm", "hourly": True},
        {"id": "MOB_PUB", "unit": "Mpkm", "hourly": True},
        {"id": "NG", "unit": "GWh", "hourly": True, "carbon_content": 0.2},
        {"id": "H2", "unit": "GWh", "hourly": True},
        {"id": "HYDRO_STOCK", "unit": "GWh", "hourly": True},
        # storable carriers balanced annually
        {"id": "WOOD", "unit": "GWh", "hourly": False, "carbon_content": 0.39, "biomass": True},
        {"id": "WET_BIO", "unit": "GWh", "hourly": False, "carbon_content": 0.36, "biomass": True},
        {"id": "DIGESTATE", "unit": "GWh", "hourly": False, "carbon_content": 0.36,
         "biomass": True},
        {"id": "FUEL", "unit": "GWh", "hourly": False, "carbon_content": 0.265},
        {"id": "AVIATION", "unit": "GWh", "hourly": False},
        {"id": "CHEMICALS", "unit": "GWh", "hourly": False, "carbon_content": 0.26},
        {"id": "PLASTIC_WASTE", "unit": "GWh", "hourly": False, "carbon_content": 0.26},
        {"id": "MOB_FREIGHT", "unit": "Mtkm", "hourly": False},
        {"id": "WIND_POT", "unit": "GWh", "hourly": False},
        {"id": "CHAR", "unit": "kt", "hourly": False, "carbon_content": 1.0},
        {"id": "CO2_IND", "unit": "kt", "hourly": False, "carbon_content": 1.0},
        {"id": "CO2_PURE", "unit": "kt", "hourly": False, "carbon_content": 1.0},
        {"id": "CO2_ATM", "unit": "kt", "hourly": False, "carbon_content": 1.0},
    ]

    resources = [
        {"id": "ELEC_IMPORT", "kind": "import", "layer": "ELECTRICITY",
         "cost": U("range", 1.0e5, 2.0e5), "availability": U("nominal_sym", 31278, 20),
         "ntc_limited": True},
        {"id": "H2_IMPORT", "kind": "import", "layer": "H2",
         "cost": U("range", 1.342e5, 1.876e5), "availability": U("range", 0, 11111),
         "constant_over_year": True},
        {"id": "NG_IMPORT", "kind": "import", "layer": "NG",
         "cost": U("range", 1.31e4, 3.13e4), "availability": U("range", 0, 35884),
         "carbon_intensity": 0.2, "constant_over_year": True},
        {"id": "FUEL_IMPORT", "kind": "import", "layer": "FUEL",
         "cost": U("range", 1.38e4, 4.97e4), "availability": U("range", 0, 96882),
         "carbon_intensity": 0.265},
        {"id": "SUST_FUEL_IMPORT", "kind": "import", "layer": "FUEL",
         "cost": U("range", 1.442e5, 2.549e5), "availability": U("range", 0, 17777),
         "carbon_intensity": 0.265, "biogenic": True},
        {"id": "CHEM_IMPORT", "kind": "import", "layer": "CHEMICALS",
         "cost": U("nominal_sym", 1.041e5, 50), "availability": U("nominal_pct", 7980, 0, 100),
         "carbon_intensity": 0.26},
        {"id": "WOOD", "kind": "local", "layer": "WOOD",
         "cost": U("nominal_sym", 2.99e4, 20), "availability": U("range", 16738, 17549),
         "carbon_intensity": 0.39, "biogenic": True},
        {"id": "WET_BIOMASS", "kind": "local", "layer": "WET_BIO",
         "cost": U("nominal_sym", 1.33e4, 20), "availability": U("range", 3034, 3467),
         "carbon_intensity": 0.36, "biogenic": True},
        {"id": "MANURE", "kind": "local", "layer": "WET_BIO",
         "cost": U("nominal_sym", 4.1e3, 20), "availability": U("nominal_sym", 7318, 20),
         "carbon_intensity": 0.36, "biogenic": True},
        {"id": "SLUDGE", "kind": "local", "layer": "WET_BIO",
         "cost": U("nominal_sym", 1.56e4, 20), "availability": U("range", 1545, 1836),
         "carbon_intensity": 0.36, "biogenic": True},
        {"id": "PLASTIC_WASTE_SRC", "kind": "local", "layer": "PLASTIC_WASTE",
         "cost": 0.0, "availability": 9000.0, "carbon_intensity": 0.26},
        {"id": "WIND_ENERGY", "kind": "local", "layer": "WIND_POT",
         "cost": 0.0, "availability": U("range", 1700, 15000)},
        {"id": "DAM_INFLOW", "kind": "local", "layer": "HYDRO_STOCK",
         "cost": 0.0, "availability": U("range", 19140, 21120),
         "capacity_factor_series": "inflow_dam"},
        {"id": "CO2_STORAGE", "kind": "export", "layer": "CO2_PURE",
         "cost": U("range", 1.0e5, 2.0e5), "availability": U("nominal_sym", 11700, 50)},
        {"id": "CHAR_REMOVAL", "kind": "export", "layer": "CHAR",
         "cost": 0.0, "availability": U("range", 1785, 2045)},
        {"id": "CO2_COMPENSATION", "kind": "export", "layer": "CO2_ATM",
         "cost": 1.3e6, "availability": "inf"},
        {"id": "CURTAILMENT", "kind": "export", "layer": "ELECTRICITY",
         "cost": 0.0, "availability": "inf"},
    ]

    technologies = [
        # electricity
        tech("PV", "ELECTRICITY", [{"ELECTRICITY": 1.0}], 7.0e8, 25, cf="pv_cf", f_max=80.0),
        tech("WIND", "ELECTRICITY", [{"ELECTRICITY": 1.0, "WIND_POT": -1.0}], 1.2e9, 25,
             cf="wind_cf", f_max=8.0),
        tech("HYDRO_RIVER", "ELECTRICITY", [{"ELECTRICITY": 1.0}], 3.4e9, 60, cf="river_cf",
             f_min=3.8, f_max=3.8, fixed_cost=True, maint_nom=6.8e7),
        tech("HYDRO_DAM", "ELECTRICITY", [{"ELECTRICITY": 1.0, "HYDRO_STOCK": -1.0}], 6.0e9, 60,
             f_min=8.08, f_max=8.08, fixed_cost=True, maint_nom=1.2e8),
        tech("PP_CH4", "ELECTRICITY",
             [{"ELECTRICITY": 1.0, "NG": -1.0 / 0.6},
              {"ELECTRICITY": 1.0, "NG": -1.0 / 0.54, "HEAT_HT": 0.26 / 0.54},
              {"ELECTRICITY": 1.0, "H2": -1.0 / 0.6}],
             8.5e8, 25),
        # low-temperature heat
        tech("DEC_AHP", "HEAT_LT_DEC", [{"HEAT_LT_DEC": 1.0, "ELECTRICITY": -1.0 / 3.0}],
             5.5e8, 18),
        tech("DEC_BOILER_GAS", "HEAT_LT_DEC",
             [{"HEAT_LT_DEC": 1.0, "NG": -1.0 / 0.9, "CO2_ATM": 0.2 / 0.9}],
             1.6e8, 20, close_carbon=False),
        tech("DEC_BOILER_WOOD", "HEAT_LT_DEC",
             [{"HEAT_LT_DEC": 1.0, "WOOD": -1.0 / 0.85, "CO2_ATM": 0.39 / 0.85}],
             3.2e8, 20, group="Low-T heat", close_carbon=False),
        tech("DHN_WHP", "HEAT_LT_DHN", [{"HEAT_LT_DHN": 1.0, "ELECTRICITY": -0.25}], 6.0e8, 25),
        # combined heat and power, electricity-normalized modes
        tech("CHP_WOOD", "ELECTRICITY",
             [{"ELECTRICITY": 1.0, "WOOD": -1.0 / 0.164, "HEAT_LT_DHN": 0.676 / 0.164},
              {"ELECTRICITY": 1.0, "WOOD": -1.0 / 0.234},
              {"ELECTRICITY": 1.0, "WOOD": -1.0 / 0.116, "HEAT_HT": 0.727 / 0.116}],
             3.5e9, 25, group="CHP"),
        tech("IND_CHP_DIGESTATE", "ELECTRICITY",
             [{"ELECTRICITY": 1.0, "DIGESTATE": -1.0 / 0.15, "HEAT_HT": 0.55 / 0.15}],
             4.0e9, 25, group="CHP"),
        # high-temperature heat
        tech("IND_BURNER_WOOD", "HEAT_HT", [{"HEAT_HT": 1.0, "WOOD": -1.0 / 0.85}],
             2.4e8, 20, group="High-T heat"),
        tech("IND_BURNER_DIGESTATE", "HEAT_HT", [{"HEAT_HT": 1.0, "DIGESTATE": -1.0 / 0.8}],
             2.6e8, 20, group="High-T heat"),
        tech("IND_BURNER_CH4", "HEAT_HT", [{"HEAT_HT": 1.0, "NG": -1.0 / 0.9}], 1.5e8, 20),
        tech("DIRECT_ELEC_HT", "HEAT_HT", [{"HEAT_HT": 1.0, "ELECTRICITY": -1.0 / 0.97}],
             1.4e8, 20),
        # mobility
        tech("CAR_EV", "MOB_PRIV", [{"MOB_PRIV": 1.0, "ELECTRICITY": -0.125}], 2.5e8, 12),
        tech("TRAIN_PUB", "MOB_PUB", [{"MOB_PUB": 1.0, "ELECTRICITY": -0.06}], 4.0e8, 30),
        tech("TRAIN_FREIGHT", "MOB_FREIGHT", [{"MOB_FREIGHT": 1.0, "ELECTRICITY": -0.05}],
             3.0e8, 40, const=True,
             f_perc={"layer": "MOB_FREIGHT", "lo": 0.2, "hi": 0.5}),
        tech("TRUCK_EV", "MOB_FREIGHT", [{"MOB_FREIGHT": 1.0, "ELECTRICITY": -0.15}],
             2.0e8, 10, const=True),
        tech("AIRCRAFT", "AVIATION", [{"AVIATION": 1.0, "FUEL": -1.0, "CO2_ATM": 0.265}],
             0.0, 30, const=True, fixed_cost=True, maint_nom=0.0, close_carbon=False),
        # hydrogen
        tech("ELECTROLYSIS", "H2", [{"H2": 1.0, "ELECTRICITY": -1.0 / 0.7}], 9.0e8, 15),
        tech("H2_GASIFICATION", "H2", [{"H2": 1.0, "WOOD": -1.0 / 0.55}], 2.4e9, 25,
             group="Hydrogen", const=True),
        tech("SMR", "H2", [{"H2": 1.0, "NG": -1.0 / 0.75}], 8.0e8, 25, const=True),
        # methane
        tech("FERMENTATION", "NG",
             [{"NG": 1.0, "WET_BIO": -2.2, "DIGESTATE": 0.7}], 2.8e9, 25,
             group="Biomethane", const=True),
        tech("GASIFICATION_CH4", "NG", [{"NG": 1.0, "WOOD": -1.0 / 0.65}], 2.2e9, 25,
             group="Biomethane", const=True),
        tech("HTG", "NG", [{"NG": 1.0, "DIGESTATE": -1.0 / 0.6}], 2.6e9, 25,
             group="Biomethane", const=True),
        tech("SABATIER", "NG", [{"NG": 1.0, "H2": -1.25, "CO2_PURE": -0.2}], 9.0e8, 25,
             const=True),
        # liquid fuel
        tech("B2L", "FUEL", [{"FUEL": 1.0, "WOOD": -1.0 / 0.58}], 2.1e9, 25,
             group="Biofuel", const=True),
        tech("HTL", "FUEL", [{"FUEL": 1.0, "DIGESTATE": -1.0 / 0.56}], 2.3e9, 25,
             group="Biofuel", const=True),
        tech("P2L", "FUEL", [{"FUEL": 1.0, "H2": -1.25, "CO2_PURE": -0.265}], 1.5e9, 25,
             const=True),
        # chemicals
        tech("BIOMASS_TO_CHEMICALS", "CHEMICALS", [{"CHEMICALS": 1.0, "WOOD": -2.0}], 2.8e9, 25,
             group="Chemicals", const=True),
        tech("GAS_TO_CHEMICALS", "CHEMICALS", [{"CHEMICALS": 1.0, "NG": -1.0 / 0.65}],
             1.8e9, 25, const=True),
        tech("OIL_TO_CHEMICALS", "CHEMICALS", [{"CHEMICALS": 1.0, "FUEL": -1.0 / 0.73}],
             1.2e9, 25, const=True),
        tech("RECYCLING", "CHEMICALS",
             [{"CHEMICALS": 1.0, "PLASTIC_WASTE": -1.0, "ELECTRICITY": -0.15}], 9.0e8, 20,
             const=True, f_perc={"layer": "CHEMICALS", "lo": 0.0, "hi": 1.0,
                                 "hi_general": "recycling_pct"}),
        # biochar
        tech("PYROLYSIS", "CHAR", [{"CHAR": 1.0, "WOOD": -2.0 / 0.39}], 2.0e9, 25,
             group="Biochar", const=True),
        tech("HTC", "CHAR", [{"CHAR": 1.0, "DIGESTATE": -2.0 / 0.36}], 2.2e9, 25,
             group="Biochar", const=True),
        # carbon handling
        tech("IND_CC", "CO2_PURE",
             [{"CO2_PURE": 1.0, "CO2_IND": -1.0 / 0.9, "CO2_ATM": 0.1 / 0.9,
               "ELECTRICITY": -0.33}],
             3.0e8, 25, const=True, close_carbon=False),
        tech("DAC", "CO2_PURE", [{"CO2_PURE": 1.0, "CO2_ATM": -1.0, "ELECTRICITY": -2.0}],
             8.0e8, 20, const=True, close_carbon=False),
        tech("VENT", "CO2_ATM", [{"CO2_ATM": 1.0, "CO2_IND": -1.0}], 0.0, 20, const=True,
             fixed_cost=True, maint_nom=0.0, close_carbon=False),
        tech("DIGESTATE_SPREADING", "CO2_ATM", [{"CO2_ATM": 1.0, "DIGESTATE": -1.0 / 0.36}],
             0.0, 20, const=True, fixed_cost=True, maint_nom=0.0, close_carbon=False),
    ]

    storages = [
        {"id": "BATTERY", "layer": "ELECTRICITY", "class": "daily",
         "c_inv": U("nominal_sym", 1.5666e8, 30), "c_maint": U("nominal_sym", 2.422e5, 30),
         "lifetime_y": 15, "t_charge_h": 4, "t_discharge_h": 4,
         "eta_in": 0.95, "eta_out": 0.95, "s_loss": 0.0002},
        {"id": "BATTERY_EV", "layer": "ELECTRICITY", "class": "daily",
         "c_inv": 0.0, "c_maint": 0.0,
         "lifetime_y": 15, "t_charge_h": 4, "t_discharge_h": 10,
         "eta_in": 0.95, "eta_out": 0.95, "s_loss": 0.0002, "s_avail": 0.2,
         "f_min": 376.0, "f_max": 376.0},
        {"id": "NG_CAVERN", "layer": "NG", "class": "seasonal",
         "c_inv": U("nominal_sym", 5.1158e4, 30), "c_maint": U("nominal_sym", 1.30916e3, 30),
         "lifetime_y": 50, "t_charge_h": 2256, "t_discharge_h": 752,
         "eta_in": 0.99, "eta_out": 0.995, "f_min": 12000.0, "f_max": 12000.0},
        {"id": "HYDRO_RESERVOIR", "layer": "HYDRO_STOCK", "class": "seasonal",
         "c_inv": U("nominal_sym", 4.64511e5, 30), "c_maint": U("range", 9290.2, 23225.6),
         "lifetime_y": 60, "t_charge_h": 1, "t_discharge_h": 1,
         "eta_in": 1.0, "eta_out": 1.0, "f_min": 8500.0, "f_max": 8500.0},
        {"id": "TES_DHN", "layer": "HEAT_LT_DHN", "class": "seasonal",
         "c_inv": U("nominal_sym", 5.1718e5, 30), "c_maint": U("nominal_sym", 2.833e3, 30),
         "lifetime_y": 25, "t_charge_h": 150, "t_discharge_h": 150,
         "eta_in": 1.0, "eta_out": 1.0, "s_loss": 6.06e-5},
    ]

    grids = [
        {"id": "ELEC_GRID", "layer": "ELECTRICITY",
         "c_inv": U("nominal_sym", 6.276e7, 30),
         "c_maint": U("range", 0.02 * 6.276e7, 0.05 * 6.276e7),
         "lifetime_y": 80, "loss_pct": 0.07},
        {"id": "DHN_GRID", "layer": "HEAT_LT_DHN",
         "c_inv": U("nominal_sym", 8.82e8, 30),
         "c_maint": U("range", 0.02 * 8.82e8, 0.05 * 8.82e8),
         "lifetime_y": 60, "loss_pct": 0.05},
    ]

    demands = [
        {"layer": "ELECTRICITY", "annual": U("range", 34160, 40920), "profile": "elec_demand"},
        {"layer": "HEAT_LT_DEC", "annual": U("range", 58770, 64140), "profile": "heat_lt",
         "split": {"layer": "HEAT_LT_DHN", "share_general": "dhn_pct"}},
        {"layer": "HEAT_HT", "annual": U("range", 16990, 20460), "profile": "process_heat"},
        {"layer": "MOB_PRIV", "annual": U("range", 124750, 146750), "profile": "mobility_day",
         "split": {"layer": "MOB_PUB", "share_general": "public_mobility_pct"}},
        {"layer": "MOB_FREIGHT", "annual": U("range", 31630, 38070)},
        {"layer": "AVIATION", "annual": U("nominal_sym", 20590, 20)},
        {"layer": "CHEMICALS", "annual": U("nominal_sym", 7980, 20)},
    ]

    model = {
        "general": {
            "i_rate": U("range", 0.0173, 0.047),
            "recycling_pct": U("range", 0, 90),
            "public_mobility_pct": U("range", 22.3, 28.7),
            "dhn_pct": U("range", 10, 30),
            "ntc_gw": U("nominal_pct", 12.9, 30, 100),
            "co2_extra_kt": U("nominal_sym", 5700, 20),
            "co2_compensation_cost_chf_per_kt": 1.3e6,
            "net_zero": True,
        },
        "layers": layers,
        "resources": resources,
        "technologies": technologies,
        "storages": storages,
        "grids": grids,
        "demands": demands,
        "time": {"td_days": TD_DAYS},
    }

    # canonical declaration order of every non-fixed value
    order = []

    def is_uncertain(v):
        return isinstance(v, dict) and "fixed" not in v

    g = model["general"]
    for key, name in [("i_rate", "i_rate"), ("recycling_pct", "recycling_pct"),
                      ("public_mobility_pct", "public_mobility_pct"), ("dhn_pct", "dhn_pct"),
                      ("ntc_gw", "ntc_gw"), ("co2_extra_kt", "co2_extra")]:
        if is_uncertain(g[key]):
            order.append("general." + name)
    for r in resources:
        if is_uncertain(r["cost"]):
            order.append("resource.%s.cost" % r["id"])
        if is_uncertain(r["availability"]):
            order.append("resource.%s.availability" % r["id"])
    for t in technologies:
        if is_uncertain(t["c_inv"]):
            order.append("tech.%s.c_inv" % t["id"])
        if is_uncertain(t["c_maint"]):
            order.append("tech.%s.c_maint" % t["id"])
    for s in storages:
        if is_uncertain(s["c_inv"]):
            order.append("storage.%s.c_inv" % s["id"])
        if is_uncertain(s["c_maint"]):
            order.append("storage.%s.c_maint" % s["id"])
    for gr in grids:
        if is_uncertain(gr["c_inv"]):
            order.append("grid.%s.c_inv" % gr["id"])
        if is_uncertain(gr["c_maint"]):
            order.append("grid.%s.c_maint" % gr["id"])
    for d in demands:
        if is_uncertain(d["annual"]):
            order.append("demand.%s.annual" % d["layer"])
    model["uncertain_order"] = order
    return model


def write_table2():
    names = ["Biofuel", "Biomethane", "Hydrogen", "Low-T heat", "High-T heat", "CHP",
             "Chemicals", "Biochar"]

    def box(name, lower=None, upper=None):
        return {
            "name": name, "kind": "box",
            "lower": {k: (lower or {}).get(k) for k in names},
            "upper": {k: (upper or {}).get(k) for k in names},
        }

    def fixed(name, values):
        return {"name": name, "kind": "fixed",
                "values": {k: values.get(k, 0.0) for k in names}}

    strategies = [
        box("Biofuel", lower={"Biofuel": 11.0}, upper={"Chemicals": 4.1}),
        box("Fuel&Chemicals", lower={"Biofuel": 11.0, "Chemicals": 4.1}),
        box("Biomethane", lower={"Biomethane": 9.0}, upper={"Biofuel": 11.0}),
        box("Hydrogen", lower={"Hydrogen": 6.4}, upper={"Biofuel": 11.0, "Biomethane": 9.0}),
        box("Chemicals", lower={"Chemicals": 6.5},
            upper={"Biofuel": 11.0, "Biomethane": 9.0, "Hydrogen": 6.7}),
        fixed("BAU", {"Biofuel": 0.3, "Biomethane": 1.4, "Low-T heat": 7.7,
                      "High-T heat": 3.1, "CHP": 6.5}),
        fixed("No Biomass", {}),
    ]
    with open(os.path.join(HERE, "table2_strategies.json"), "w") as f:
        json.dump(strategies, f, indent=2)
        f.write("\n")


def main():
    os.makedirs(os.path.join(HERE, "timeseries"), exist_ok=True)
    gen_timeseries()
    model = build_model()
    with open(os.path.join(HERE, "swiss-lite.json"), "w") as f:
        json.dump(model, f, indent=1)
        f.write("\n")
    write_table2()
    print("layers=%d resources=%d technologies=%d storages=%d params=%d"
          % (len(model["layers"]), len(model["resources"]), len(model["technologies"]),
             len(model["storages"]), len(model["uncertain_order"])))


if __name__ == "__main__":
    main()
