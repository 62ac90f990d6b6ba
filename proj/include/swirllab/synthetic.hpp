#pragma once

#include <swirllab/diagnostics.hpp>

#include <functional>
#include <random>
#include <vector>

namespace swirl {

using TimeFunction = std::function<double(double)>;

struct GrowthInputs {
    TimeFunction kappa;
    TimeFunction F;
};

// Smooth random 0.5 <= kappa(t) <= 1.2 and |F(t)| <= 2 on [0, 1].
GrowthInputs random_growth_inputs(std::mt19937_64& rng);

// Classical RK4 for d/dt a = kappa^2 a + F on a uniform grid with n intervals.
std::vector<double> rk4_growth(const GrowthInputs& in, double a0, double t0, double t1, int n);

// Series along a synthetic xi(t) with kappa = 1/xi that satisfies the printed ODE
// exactly (RK4 on a 64x finer grid), |F_proof| <= N and |G(0)| > T N.
std::vector<DiagnosticSample> synthetic_theorem_series(std::mt19937_64& rng, double N, double T, int n);

} // namespace swirl
