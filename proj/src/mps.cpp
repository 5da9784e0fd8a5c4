#include "rplan/mps.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rplan {

namespace {

std::string col_name(int j) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "C%07d", j + 1);
    return buf;
}

std::string row_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "R%07d", i + 1);
    return buf;
}

std::string num(double v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%.6E", v);
    return buf;
}

// Fixed MPS data line: fields start at columns 2, 5, 15, 25, 40, 50 (1-based).
void line(std::ostream& os, const std::string& f1, const std::string& f2,
          const std::string& f3 = "", const std::string& f4 = "",
          const std::string& f5 = "", const std::string& f6 = "") {
    std::string s(1, ' ');
    auto pad_to = [&s](std::size_t col) {
        while (s.size() < col) s.push_back(' ');
    };
    s += f1;
    pad_to(4);
    s += f2;
    if (!f3.empty()) {
        pad_to(14);
        s += f3;
    }
    if (!f4.empty()) {
        pad_to(24);
        s += f4;
    }
    if (!f5.empty()) {
        pad_to(39);
        s += f5;
    }
    if (!f6.empty()) {
        pad_to(49);
        s += f6;
    }
    os << s << '\n';
}

} // namespace

std::string to_mps(const LinearProgram& lp, const std::string& problem_name) {
    std::ostringstream os;
    os << "NAME          " << problem_name << '\n';

    os << "ROWS\n";
    line(os, "N", "COST");
    for (int i = 0; i < lp.num_rows(); ++i) {
        const char* s = lp.senses()[i] == RowSense::LE   ? "L"
                        : lp.senses()[i] == RowSense::GE ? "G"
                                                         : "E";
        line(os, s, row_name(i));
    }

    // column-major assembly of row entries
    std::vector<std::vector<std::pair<int, double>>> cols(lp.num_vars());
    for (int i = 0; i < lp.num_rows(); ++i)
        for (const auto& e : lp.rows()[i]) cols[e.col].emplace_back(i, e.value);

    os << "COLUMNS\n";
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (lp.objective()[j] != 0.0)
            line(os, "", col_name(j), "COST", num(lp.objective()[j]));
        for (const auto& [i, v] : cols[j]) line(os, "", col_name(j), row_name(i), num(v));
    }

    os << "RHS\n";
    for (int i = 0; i < lp.num_rows(); ++i)
        if (lp.rhs()[i] != 0.0) line(os, "", "RHS", row_name(i), num(lp.rhs()[i]));

    os << "BOUNDS\n";
    for (int j = 0; j < lp.num_vars(); ++j) {
        double lb = lp.lower_bounds()[j], ub = lp.upper_bounds()[j];
        bool lb_fin = std::isfinite(lb), ub_fin = std::isfinite(ub);
        if (lb_fin && ub_fin && lb == ub) {
            line(os, "FX", "BND", col_name(j), num(lb));
            continue;
        }
        if (!lb_fin && !ub_fin) {
            line(os, "FR", "BND", col_name(j));
            continue;
        }
        if (!lb_fin)
            line(os, "MI", "BND", col_name(j));
        else if (lb != 0.0)
            line(os, "LO", "BND", col_name(j), num(lb));
        if (ub_fin) line(os, "UP", "BND", col_name(j), num(ub));
    }

    os << "ENDATA\n";
    return os.str();
}

void write_mps(const LinearProgram& lp, const std::string& path, const std::string& problem_name) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw MissingArtifact("write_mps: cannot open '" + path + "'");
    f << to_mps(lp, problem_name);
}

} // namespace rplan
