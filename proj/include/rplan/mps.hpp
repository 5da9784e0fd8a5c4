#pragma once

#include <string>

#include "rplan/lp.hpp"

namespace rplan {

// Fixed-column MPS rendering of the program (fields at the classic offsets,
// generated 8-character row/column names C0000001/R0000001 plus an objective
// row named COST). Used for cross-checks against third-party solvers.
std::string to_mps(const LinearProgram& lp, const std::string& problem_name = "RPLAN");

void write_mps(const LinearProgram& lp, const std::string& path,
               const std::string& problem_name = "RPLAN");

} // namespace rplan
