#include "rplan/strategy.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rplan {

using nlohmann::json;

int output_index(const std::string& name) {
    for (int i = 0; i < kNumOutputs; ++i)
        if (kOutputNames[i] == name) return i;
    throw MissingReference("unknown output of interest '" + name + "'");
}

Strategy Strategy::box(std::string name) {
    Strategy s;
    s.name = std::move(name);
    s.kind = StrategyKind::Box;
    s.lower.fill(-kInf);
    s.upper.fill(kInf);
    return s;
}

Strategy Strategy::fixed(std::string name, const std::array<double, kNumOutputs>& v) {
    Strategy s;
    s.name = std::move(name);
    s.kind = StrategyKind::Fixed;
    s.values = v;
    s.validate();
    return s;
}

Strategy Strategy::share(std::string name, const std::array<double, kNumOutputs>& sh) {
    Strategy s;
    s.name = std::move(name);
    s.kind = StrategyKind::Share;
    s.shares = sh;
    s.validate();
    return s;
}

void Strategy::validate() const {
    switch (kind) {
        case StrategyKind::Box:
            for (int i = 0; i < kNumOutputs; ++i)
                if (lower[i] > upper[i])
                    throw DomainError("strategy '" + name + "': lower > upper for " +
                                      kOutputNames[i]);
            break;
        case StrategyKind::Fixed:
            for (double v : values)
                if (v < 0.0) throw DomainError("strategy '" + name + "': negative fixed value");
            break;
        case StrategyKind::Share: {
            double sum = 0.0;
            for (double v : shares) {
                if (v < 0.0) throw DomainError("strategy '" + name + "': negative share");
                sum += v;
            }
            if (std::abs(sum - 100.0) > 1e-9)
                throw DomainError("strategy '" + name + "': shares sum to " +
                                  std::to_string(sum) + "%, expected 100%");
            break;
        }
    }
}

std::vector<Strategy> builtin_strategies() {
    // order: Biofuel, Biomethane, Hydrogen, Low-T, High-T, CHP, Chemicals, Biochar
    Strategy bau = Strategy::fixed("BAU", {0.3, 1.4, 0.0, 7.7, 3.1, 6.5, 0.0, 0.0});
    Strategy none = Strategy::fixed("No Biomass", {0, 0, 0, 0, 0, 0, 0, 0});
    return {bau, none};
}

namespace {

json bound_to_json(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

double bound_from_json(const json& j, double absent) {
    return j.is_null() ? absent : j.get<double>();
}

} // namespace

std::string strategies_to_json(const std::vector<Strategy>& list) {
    json root = json::array();
    for (const auto& s : list) {
        json e;
        e["name"] = s.name;
        json per;
        switch (s.kind) {
            case StrategyKind::Box: {
                e["kind"] = "box";
                json lo, hi;
                for (int i = 0; i < kNumOutputs; ++i) {
                    lo[kOutputNames[i]] = bound_to_json(s.lower[i]);
                    hi[kOutputNames[i]] = bound_to_json(s.upper[i]);
                }
                e["lower"] = lo;
                e["upper"] = hi;
                break;
            }
            case StrategyKind::Fixed:
                e["kind"] = "fixed";
                for (int i = 0; i < kNumOutputs; ++i) per[kOutputNames[i]] = s.values[i];
                e["values"] = per;
                break;
            case StrategyKind::Share:
                e["kind"] = "share";
                for (int i = 0; i < kNumOutputs; ++i) per[kOutputNames[i]] = s.shares[i];
                e["shares"] = per;
                break;
        }
        root.push_back(std::move(e));
    }
    return root.dump(2) + "\n";
}

std::vector<Strategy> strategies_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("strategies: ") + e.what());
    }
    if (!root.is_array()) throw ParseError("strategies: expected a top-level array");
    std::vector<Strategy> out;
    for (const auto& e : root) {
        std::string name = e.at("name").get<std::string>();
        std::string kind = e.at("kind").get<std::string>();
        if (kind == "box") {
            Strategy s = Strategy::box(name);
            for (int i = 0; i < kNumOutputs; ++i) {
                if (e.contains("lower") && e["lower"].contains(kOutputNames[i]))
                    s.lower[i] = bound_from_json(e["lower"][kOutputNames[i]], -kInf);
                if (e.contains("upper") && e["upper"].contains(kOutputNames[i]))
                    s.upper[i] = bound_from_json(e["upper"][kOutputNames[i]], kInf);
            }
            s.validate();
            out.push_back(std::move(s));
        } else if (kind == "fixed") {
            std::array<double, kNumOutputs> v{};
            for (int i = 0; i < kNumOutputs; ++i)
                v[i] = e.at("values").at(kOutputNames[i]).get<double>();
            out.push_back(Strategy::fixed(name, v));
        } else if (kind == "share") {
            std::array<double, kNumOutputs> v{};
            for (int i = 0; i < kNumOutputs; ++i)
                v[i] = e.at("shares").at(kOutputNames[i]).get<double>();
            out.push_back(Strategy::share(name, v));
        } else {
            throw ParseError("strategies: unknown kind '" + kind + "'");
        }
    }
    return out;
}

void write_strategies(const std::vector<Strategy>& list, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw MissingArtifact("write_strategies: cannot open '" + path + "'");
    f << strategies_to_json(list);
}

std::vector<Strategy> load_strategies(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw MissingArtifact("load_strategies: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return strategies_from_json(ss.str());
}

} // namespace rplan
