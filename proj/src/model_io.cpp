#include "rplan/model_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rplan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

UncertainValue parse_uncertain(const json& j, const std::string& ctx) {
    if (j.is_number()) return UncertainValue::fixed(j.get<double>());
    if (j.is_string() && j.get<std::string>() == "inf") return UncertainValue::fixed(kInf);
    if (!j.is_object()) throw ParseError(ctx + ": expected number or uncertainty object");
    if (j.contains("range")) {
        auto v = j["range"];
        return UncertainValue::range(v.at(0).get<double>(), v.at(1).get<double>());
    }
    if (j.contains("nominal_pct")) {
        auto v = j["nominal_pct"];
        return UncertainValue::nominal_pct(v.at(0).get<double>(), v.at(1).get<double>(),
                                           v.at(2).get<double>());
    }
    if (j.contains("nominal_sym")) {
        auto v = j["nominal_sym"];
        return UncertainValue::nominal_sym(v.at(0).get<double>(), v.at(1).get<double>());
    }
    if (j.contains("fixed")) return UncertainValue::fixed(j["fixed"].get<double>());
    throw ParseError(ctx + ": unknown uncertainty form");
}

double parse_bound(const json& j, const std::string& ctx) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw ParseError(ctx + ": bad bound");
    }
    return j.get<double>();
}

ResourceKind parse_kind(const std::string& s, const std::string& ctx) {
    if (s == "import") return ResourceKind::Import;
    if (s == "local") return ResourceKind::Local;
    if (s == "export") return ResourceKind::ExportRemoval;
    throw ParseError(ctx + ": unknown resource kind '" + s + "'");
}

} // namespace

Timeseries load_timeseries_csv(const std::string& path, const std::string& id) {
    std::ifstream f(path);
    if (!f) throw MissingReference("timeseries '" + id + "': file not found: " + path);
    Timeseries ts;
    ts.id = id;
    std::array<bool, 288> seen{};
    std::string line;
    if (!std::getline(f, line)) throw ParseError("timeseries '" + id + "': empty file");
    if (line.rfind("td", 0) != 0)
        throw ParseError("timeseries '" + id + "': expected header td,hour,value");
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string td_s, h_s, v_s;
        if (!std::getline(ss, td_s, ',') || !std::getline(ss, h_s, ',') ||
            !std::getline(ss, v_s))
            throw ParseError("timeseries '" + id + "': bad line " + std::to_string(lineno));
        int td, h;
        double v;
        try {
            td = std::stoi(td_s);
            h = std::stoi(h_s);
            v = std::stod(v_s);
        } catch (const std::exception&) {
            throw ParseError("timeseries '" + id + "': bad line " + std::to_string(lineno));
        }
        if (td < 1 || td > 12 || h < 0 || h > 23)
            throw ParseError("timeseries '" + id + "': slot out of range at line " +
                             std::to_string(lineno));
        ts.values[(td - 1) * 24 + h] = v;
        seen[(td - 1) * 24 + h] = true;
    }
    for (int i = 0; i < 288; ++i)
        if (!seen[i])
            throw ParseError("timeseries '" + id + "': missing slot td=" +
                             std::to_string(i / 24 + 1) + " hour=" + std::to_string(i % 24));
    return ts;
}

ModelDefinition parse_model_json(const std::string& text, const std::string& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("model: top level must be an object");

    ModelDefinition m;
    try {
        const json& g = root.at("general");
        m.general.i_rate = parse_uncertain(g.at("i_rate"), "general.i_rate");
        m.general.recycling_pct =
            parse_uncertain(g.at("recycling_pct"), "general.recycling_pct");
        m.general.public_mobility_pct =
            parse_uncertain(g.at("public_mobility_pct"), "general.public_mobility_pct");
        m.general.dhn_pct = parse_uncertain(g.at("dhn_pct"), "general.dhn_pct");
        m.general.ntc_gw = parse_uncertain(g.at("ntc_gw"), "general.ntc_gw");
        m.general.co2_extra = parse_uncertain(g.at("co2_extra_kt"), "general.co2_extra");
        m.general.co2_compensation_cost = g.at("co2_compensation_cost_chf_per_kt").get<double>();
        m.general.net_zero = g.at("net_zero").get<bool>();

        for (const auto& lj : root.at("layers")) {
            Layer l;
            l.id = lj.at("id").get<std::string>();
            l.unit = lj.value("unit", "GWh");
            l.hourly = lj.value("hourly", true);
            l.carbon_content = lj.value("carbon_content", 0.0);
            l.biomass = lj.value("biomass", false);
            m.layers.push_back(std::move(l));
        }

        for (const auto& rj : root.at("resources")) {
            Resource r;
            r.id = rj.at("id").get<std::string>();
            r.kind = parse_kind(rj.at("kind").get<std::string>(), "resource." + r.id);
            r.layer = rj.at("layer").get<std::string>();
            r.cost = parse_uncertain(rj.at("cost"), "resource." + r.id + ".cost");
            r.availability =
                parse_uncertain(rj.at("availability"), "resource." + r.id + ".availability");
            r.carbon_intensity = rj.value("carbon_intensity", 0.0);
            r.biogenic = rj.value("biogenic", false);
            r.constant_over_year = rj.value("constant_over_year", false);
            r.capacity_factor_series = rj.value("capacity_factor_series", "");
            r.ntc_limited = rj.value("ntc_limited", false);
            m.resources.push_back(std::move(r));
        }

        for (const auto& tj : root.at("technologies")) {
            Technology t;
            t.id = tj.at("id").get<std::string>();
            t.main_layer = tj.at("main_layer").get<std::string>();
            for (const auto& mj : tj.at("modes")) {
                std::map<std::string, double> mode;
                for (auto it = mj.begin(); it != mj.end(); ++it)
                    mode[it.key()] = it.value().get<double>();
                t.modes.push_back(std::move(mode));
            }
            t.c_inv = parse_uncertain(tj.at("c_inv"), "tech." + t.id + ".c_inv");
            if (tj.contains("c_maint")) {
                t.c_maint = parse_uncertain(tj["c_maint"], "tech." + t.id + ".c_maint");
            } else {
                // maintenance defaults to 2-5% of the mean investment cost
                double mean = 0.5 * (t.c_inv.bounds().first + t.c_inv.bounds().second);
                t.c_maint = mean > 0.0 ? UncertainValue::range(0.02 * mean, 0.05 * mean)
                                       : UncertainValue::fixed(0.0);
            }
            t.lifetime_y = tj.at("lifetime_y").get<double>();
            if (tj.contains("c_p")) {
                if (tj["c_p"].is_string())
                    t.c_p_series = tj["c_p"].get<std::string>();
                else
                    t.c_p = tj["c_p"].get<double>();
            }
            t.f_min = tj.contains("f_min") ? parse_bound(tj["f_min"], t.id) : 0.0;
            t.f_max = tj.contains("f_max") ? parse_bound(tj["f_max"], t.id) : kInf;
            t.constant_operation = tj.value("constant_operation", false);
            t.group = tj.value("group", "");
            if (tj.contains("f_perc")) {
                Technology::FPerc fp;
                fp.layer = tj["f_perc"].at("layer").get<std::string>();
                fp.lo = tj["f_perc"].value("lo", 0.0);
                fp.hi = tj["f_perc"].value("hi", 1.0);
                fp.hi_general = tj["f_perc"].value("hi_general", "");
                t.f_perc = fp;
            }
            m.technologies.push_back(std::move(t));
        }

        for (const auto& sj : root.at("storages")) {
            StorageTech s;
            s.id = sj.at("id").get<std::string>();
            s.layer = sj.at("layer").get<std::string>();
            std::string cls = sj.at("class").get<std::string>();
            if (cls == "daily")
                s.cls = StorageClass::Daily;
            else if (cls == "seasonal")
                s.cls = StorageClass::Seasonal;
            else
                throw ParseError("storage." + s.id + ": unknown class '" + cls + "'");
            s.c_inv = parse_uncertain(sj.at("c_inv"), "storage." + s.id + ".c_inv");
            if (sj.contains("c_maint")) {
                s.c_maint = parse_uncertain(sj["c_maint"], "storage." + s.id + ".c_maint");
            } else {
                double mean = 0.5 * (s.c_inv.bounds().first + s.c_inv.bounds().second);
                s.c_maint = mean > 0.0 ? UncertainValue::range(0.02 * mean, 0.05 * mean)
                                       : UncertainValue::fixed(0.0);
            }
            s.lifetime_y = sj.at("lifetime_y").get<double>();
            s.t_charge_h = sj.at("t_charge_h").get<double>();
            s.t_discharge_h = sj.at("t_discharge_h").get<double>();
            s.eta_in = sj.at("eta_in").get<double>();
            s.eta_out = sj.at("eta_out").get<double>();
            s.s_loss = sj.value("s_loss", 0.0);
            s.s_avail = sj.value("s_avail", 1.0);
            s.f_min = sj.contains("f_min") ? parse_bound(sj["f_min"], s.id) : 0.0;
            s.f_max = sj.contains("f_max") ? parse_bound(sj["f_max"], s.id) : kInf;
            m.storages.push_back(std::move(s));
        }

        for (const auto& gj : root.at("grids")) {
            Grid g2;
            g2.id = gj.at("id").get<std::string>();
            g2.layer = gj.at("layer").get<std::string>();
            g2.c_inv = parse_uncertain(gj.at("c_inv"), "grid." + g2.id + ".c_inv");
            if (gj.contains("c_maint")) {
                g2.c_maint = parse_uncertain(gj["c_maint"], "grid." + g2.id + ".c_maint");
            } else {
                double mean = 0.5 * (g2.c_inv.bounds().first + g2.c_inv.bounds().second);
                g2.c_maint = mean > 0.0 ? UncertainValue::range(0.02 * mean, 0.05 * mean)
                                        : UncertainValue::fixed(0.0);
            }
            g2.lifetime_y = gj.at("lifetime_y").get<double>();
            g2.loss_pct = gj.value("loss_pct", 0.0);
            m.grids.push_back(std::move(g2));
        }

        for (const auto& dj : root.at("demands")) {
            DemandSpec d;
            d.layer = dj.at("layer").get<std::string>();
            d.annual = parse_uncertain(dj.at("annual"), "demand." + d.layer + ".annual");
            d.profile = dj.value("profile", "");
            if (dj.contains("split")) {
                d.split_layer = dj["split"].at("layer").get<std::string>();
                d.split_share_general = dj["split"].at("share_general").get<std::string>();
            }
            m.demands.push_back(std::move(d));
        }

        std::array<int, 12> days{};
        const json& tdj = root.at("time").at("td_days");
        if (tdj.size() != 12) throw ParseError("time.td_days: expected 12 day indices");
        for (int i = 0; i < 12; ++i) days[i] = tdj.at(i).get<int>();
        m.time = TimeStructure::from_days(days);

        for (const auto& uj : root.at("uncertain_order"))
            m.uncertain_order.push_back(uj.get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("model: ") + e.what());
    }

    // sidecar timeseries: every id referenced anywhere
    std::set<std::string> needed;
    for (const auto& r : m.resources)
        if (!r.capacity_factor_series.empty()) needed.insert(r.capacity_factor_series);
    for (const auto& t : m.technologies)
        if (!t.c_p_series.empty()) needed.insert(t.c_p_series);
    for (const auto& d : m.demands)
        if (!d.profile.empty()) needed.insert(d.profile);
    for (const auto& id : needed) {
        fs::path p = fs::path(base_dir) / "timeseries" / (id + ".csv");
        m.timeseries[id] = load_timeseries_csv(p.string(), id);
    }
    return m;
}

ModelDefinition load_model(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("load_model: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    if (ss.str().empty()) throw ParseError("load_model: empty document: " + path);
    ModelDefinition m = parse_model_json(ss.str(), fs::path(path).parent_path().string());
    ValidationReport rep = validate_model(m);
    if (!rep.ok())
        throw ModelError("load_model: validation failed:\n" + rep.to_string());
    return m;
}

} // namespace rplan
