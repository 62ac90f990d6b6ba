#pragma once

#include <swirllab/field.hpp>
#include <swirllab/solver.hpp>

namespace swirl {

// Analytic solution on [0,1]^2 compatible with the solver's boundary conditions:
// u = e(t) U(r,z), p = e(t) P(r,z), e(t) = exp(-t).
struct ForcedSolution {
    double nu = 1.0;

    struct Values {
        double u_r, u_theta, u_z, p;
    };
    Values exact(double r, double z, double t) const;

    // Fills a field of the given shape with exact values at time t.
    AxisymField sample(int nr, int nz, double t) const;

    // Body force for the solver; spatial parts are precomputed for the grid.
    Forcing forcing(int nr, int nz) const;
};

struct ConvergenceLevel {
    int cells = 0;        // cells per side; nodes = cells + 1
    double error = 0;     // max-norm velocity error at t_end
    double max_div = 0;   // largest post-projection divergence over all steps
    int steps = 0;
    double seconds = 0;
};

// Runs the forced solution from its exact initial state to t_end.
ConvergenceLevel mms_level(int cells, double t_end, double nu = 1.0);

} // namespace swirl
