#pragma once

#include <array>
#include <string>
#include <vector>

#include "rplan/errors.hpp"
#include "rplan/lp.hpp"

namespace rplan {

inline constexpr int kNumOutputs = 8;

// Canonical ordering of the outputs of interest; every 8-vector in the
// library follows it.
inline const std::array<std::string, kNumOutputs> kOutputNames = {
    "Biofuel", "Biomethane", "Hydrogen",  "Low-T heat",
    "High-T heat", "CHP",    "Chemicals", "Biochar",
};

int output_index(const std::string& name);

enum class StrategyKind { Box, Fixed, Share };

// A strategy constrains the annual biomass allocation vector y:
//   Box:   lower <= y <= upper   (+-inf where a side is absent)
//   Fixed: y == values           [TWh/y]
//   Share: y_g == share_g * sum(y), shares in percent summing to 100
struct Strategy {
    std::string name;
    StrategyKind kind = StrategyKind::Box;
    std::array<double, kNumOutputs> lower{};   // Box
    std::array<double, kNumOutputs> upper{};   // Box
    std::array<double, kNumOutputs> values{};  // Fixed [TWh/y]
    std::array<double, kNumOutputs> shares{};  // Share [%]

    static Strategy box(std::string name);
    static Strategy fixed(std::string name, const std::array<double, kNumOutputs>& v);
    static Strategy share(std::string name, const std::array<double, kNumOutputs>& s);

    void validate() const;
};

// The two reference strategies evaluated alongside the tree-derived ones:
// business-as-usual biomass use and a complete biomass ban.
std::vector<Strategy> builtin_strategies();

std::string strategies_to_json(const std::vector<Strategy>& list);
std::vector<Strategy> strategies_from_json(const std::string& text);
void write_strategies(const std::vector<Strategy>& list, const std::string& path);
std::vector<Strategy> load_strategies(const std::string& path);

} // namespace rplan
