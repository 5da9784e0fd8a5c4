#pragma once

#include "rplan/lp.hpp"

namespace rplan {

// Exhaustive reference solver for small programs: enumerates every vertex of
// the feasible polytope (choosing n active constraints among rows and bounds
// and solving the square system) and reports the best one. Free directions
// are boxed at +-1e7 first; an optimum that lands on the artificial box is
// reported as Unbounded, so genuine vertex coordinates must stay well below
// the box. Intended purely as a test oracle, independent of the simplex path.
//
// Throws TooLarge beyond 10 variables / 20 rows or when the combination
// count is impractical.
Solution vertex_enumeration_oracle(const LinearProgram& lp);

} // namespace rplan
