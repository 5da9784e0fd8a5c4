#pragma once

#include "rplan/lp.hpp"

namespace rplan {

// Bounded-variable primal simplex (revised, product-form updates on a sparse
// LU basis factorization). Devex reference pricing by default (Dantzig
// selectable), switching to Bland's rule after `degenerate_limit`
// consecutive degenerate pivots or a detected stall, and back once progress
// resumes. A Harris two-pass ratio test plus deterministic bound
// perturbation keep degenerate vertices moving. Equilibration scaling
// (power-of-two row/column max-norm) is applied before the solve and removed
// from the returned solution.
//
// The solve is fully deterministic for identical input: fixed scan order,
// fixed tie-breaking, hash-seeded perturbations, no concurrency.
struct SimplexOptions {
    enum class Pricing { Devex, Dantzig };
    Pricing pricing = Pricing::Devex;
    double pivot_tol = 1e-9;       // minimum magnitude of an acceptable pivot
    double feas_tol = 1e-9;        // bound violation treated as infeasible (scaled)
    double opt_tol = 1e-9;         // reduced-cost threshold for entering vars
    double certify_rel = 1e-7;     // relative certification tolerance
    int degenerate_limit = 1000;   // consecutive degenerate pivots before Bland
    int refactor_every = 100;      // basis refactorization cadence (pivots)
    long max_iterations = 0;       // 0 = automatic (scales with problem size)
    bool scale = true;
    long log_every = 0;            // stderr progress cadence, 0 = silent
};

// Solves min c'x subject to the rows and bounds of `lp`.
// `warm` may carry the basis of a previous solve of a structurally compatible
// program (same column count after slack augmentation); an unusable hint is
// ignored. Throws NumericalFailure when the pivot sequence breaks down even
// under the anti-cycling fallback.
Solution solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {},
                  const BasisHint& warm = {});

} // namespace rplan
