#include <swirllab/synthetic.hpp>

#include <cmath>

namespace swirl {

GrowthInputs random_growth_inputs(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double a = 0.5 + 0.5 * U(rng), b = 0.2 * U(rng), w = 1.0 + 3.0 * U(rng), ph = 6.283185307179586 * U(rng);
    const double c = 2.0 * U(rng) - 1.0, d = 2.0 * U(rng) - 1.0, w2 = 1.0 + 3.0 * U(rng);
    return {[=](double t) { return a + b * std::sin(w * t + ph); }, [=](double t) { return c + d * std::cos(w2 * t); }};
}

std::vector<double> rk4_growth(const GrowthInputs& in, double a0, double t0, double t1, int n) {
    const double h = (t1 - t0) / n;
    auto rhs = [&](double t, double a) {
        const double k = in.kappa(t);
        return k * k * a + in.F(t);
    };
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    out[0] = a0;
    double a = a0;
    for (int i = 0; i < n; ++i) {
        const double t = t0 + i * h;
        const double k1 = rhs(t, a);
        const double k2 = rhs(t + 0.5 * h, a + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, a + 0.5 * h * k2);
        const double k4 = rhs(t + h, a + h * k3);
        a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out[static_cast<std::size_t>(i) + 1] = a;
    }
    return out;
}

std::vector<DiagnosticSample> synthetic_theorem_series(std::mt19937_64& rng, double N, double T, int n) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double xi0 = 0.5 + 1.5 * U(rng), amp = 0.2 * U(rng), w = 1.0 + 4.0 * U(rng);
    const double s = 2.0 * U(rng) - 1.0, w2 = 1.0 + 6.0 * U(rng), ph = 6.283185307179586 * U(rng);
    const double g0 = T * N * (1.05 + 2.0 * U(rng));
    auto xi = [=](double t) { return xi0 * (1.0 + amp * std::sin(w * t)); };
    GrowthInputs in{[=](double t) { return 1.0 / xi(t); }, [=](double t) { return N * s * std::sin(w2 * t + ph); }};
    const int fine = 64;
    const auto a = rk4_growth(in, g0, 0.0, T, n * fine);
    std::vector<DiagnosticSample> out;
    for (int i = 0; i <= n; ++i) {
        const double t = T * i / n;
        DiagnosticSample d;
        d.t = t;
        d.xi_r = xi(t);
        d.kappa = in.kappa(t);
        d.alpha1 = a[static_cast<std::size_t>(i) * fine];
        d.alpha3 = -in.F(t);
        d.S_at_xi = 1.0;
        d.fill_derived();
        out.push_back(d);
    }
    return out;
}

} // namespace swirl
