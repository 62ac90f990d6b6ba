#include <swirllab/jet.hpp>
#include <swirllab/mms.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>

namespace swirl {

namespace {

template <class T>
struct Spatial {
    T ur, ut, uz, p;
};

template <class T>
Spatial<T> spatial(const T& r, const T& z) {
    using std::cos;
    const double pi = std::numbers::pi;
    T r2 = r * r;
    T a = (1.0 - r2) * (1.0 - 0.5 * r2);
    T da = -3.0 * r + 2.0 * r2 * r;
    T b = z * z * (1.0 - z) * (1.0 - (2.0 / 3.0) * z);
    T db = 2.0 * z - 5.0 * z * z + (8.0 / 3.0) * z * z * z;
    Spatial<T> s;
    s.ur = -1.0 * r * a * db;
    s.uz = (2.0 * a + r * da) * b;
    s.ut = r * (1.0 - r2 * (1.0 / 3.0)) * z * (2.0 - z);
    T q = 1.0 - r2;
    s.p = q * q * cos(pi * z);
    return s;
}

} // namespace

ForcedSolution::Values ForcedSolution::exact(double r, double z, double t) const {
    auto s = spatial<double>(r, z);
    double e = std::exp(-t);
    return {e * s.ur, e * s.ut, e * s.uz, e * s.p};
}

AxisymField ForcedSolution::sample(int nr, int nz, double t) const {
    AxisymField f(nr, nz, 1.0 / (nr - 1), 1.0 / (nz - 1), nu);
    f.t = t;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nz; ++j) {
            auto v = exact(f.r(i), f.z(j), t);
            auto k = f.idx(i, j);
            f.u_r[k] = v.u_r;
            f.u_theta[k] = v.u_theta;
            f.u_z[k] = v.u_z;
            f.p[k] = v.p;
        }
    return f;
}

Forcing ForcedSolution::forcing(int nr, int nz) const {
    using J = Jet<2>;
    struct Parts {
        std::vector<double> lin_r, lin_t, lin_z, quad_r, quad_t, quad_z;
    };
    auto parts = std::make_shared<Parts>();
    const std::size_t n = static_cast<std::size_t>(nr) * nz;
    for (auto* v : {&parts->lin_r, &parts->lin_t, &parts->lin_z, &parts->quad_r, &parts->quad_t, &parts->quad_z})
        v->assign(n, 0.0);
    const double dr = 1.0 / (nr - 1), dz = 1.0 / (nz - 1);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nz; ++j) {
            const double r = i * dr, z = j * dz;
            auto s = spatial<J>(J::variable(r, 0), J::variable(z, 1));
            auto d = [](const J& q, int a, int b) { return q.derivative(a, b, 0); };
            const std::size_t k = static_cast<std::size_t>(i) * nz + j;
            const double Ur = s.ur.value(), Ut = s.ut.value(), Uz = s.uz.value();
            if (i == 0) {
                double lap = 2.0 * d(s.uz, 2, 0) + d(s.uz, 0, 2);
                parts->lin_z[k] = -Uz - nu * lap + d(s.p, 0, 1);
                parts->quad_z[k] = Uz * d(s.uz, 0, 1);
                continue;
            }
            auto lap = [&](const J& q) { return d(q, 2, 0) + d(q, 1, 0) / r + d(q, 0, 2); };
            parts->lin_r[k] = -Ur - nu * (lap(s.ur) - Ur / (r * r)) + d(s.p, 1, 0);
            parts->lin_t[k] = -Ut - nu * (lap(s.ut) - Ut / (r * r));
            parts->lin_z[k] = -Uz - nu * lap(s.uz) + d(s.p, 0, 1);
            parts->quad_r[k] = Ur * d(s.ur, 1, 0) + Uz * d(s.ur, 0, 1) - Ut * Ut / r;
            parts->quad_t[k] = Ur * d(s.ut, 1, 0) + Uz * d(s.ut, 0, 1) + Ur * Ut / r;
            parts->quad_z[k] = Ur * d(s.uz, 1, 0) + Uz * d(s.uz, 0, 1);
        }
    return [parts](double t, std::vector<double>& fr, std::vector<double>& ft, std::vector<double>& fz) {
        const double e = std::exp(-t), e2 = e * e;
        for (std::size_t k = 0; k < fr.size(); ++k) {
            fr[k] = e * parts->lin_r[k] + e2 * parts->quad_r[k];
            ft[k] = e * parts->lin_t[k] + e2 * parts->quad_t[k];
            fz[k] = e * parts->lin_z[k] + e2 * parts->quad_z[k];
        }
    };
}

ConvergenceLevel mms_level(int cells, double t_end, double nu) {
    const auto start = std::chrono::steady_clock::now();
    ForcedSolution ms{nu};
    const int n = cells + 1;
    SimConfig c;
    c.nr = c.nz = n;
    c.nu = nu;
    Solver s(c);
    s.set_forcing(ms.forcing(n, n));
    AxisymField f = ms.sample(n, n, 0.0);
    s.project(f);
    ConvergenceLevel out;
    out.cells = cells;
    out.max_div = max_divergence(f);
    while (f.t < t_end - 1e-14) {
        const double dt = std::min(s.cfl_dt(f), t_end - f.t);
        f = s.step(f, dt);
        out.max_div = std::max(out.max_div, max_divergence(f));
        ++out.steps;
    }
    const AxisymField ex = ms.sample(n, n, f.t);
    for (std::size_t k = 0; k < f.size(); ++k)
        out.error = std::max({out.error, std::abs(f.u_r[k] - ex.u_r[k]), std::abs(f.u_theta[k] - ex.u_theta[k]),
                              std::abs(f.u_z[k] - ex.u_z[k])});
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace swirl
