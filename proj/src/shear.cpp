#include <swirllab/errors.hpp>
#include <swirllab/shear.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace swirl {

BoundaryShear make_shear(std::vector<double> r_grid, std::vector<double> dzur, std::vector<double> dzutheta) {
    BoundaryShear s;
    s.r_grid = std::move(r_grid);
    s.dzur = std::move(dzur);
    s.dzutheta = std::move(dzutheta);
    const std::size_t n = s.r_grid.size();
    s.vh_mag.resize(n);
    s.S.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.vh_mag[i] = std::hypot(s.dzur[i], s.dzutheta[i]);
        s.S[i] = s.vh_mag[i] > 0 ? s.dzutheta[i] / s.vh_mag[i] : std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

BoundaryShear boundary_shear(const AxisymField& f) {
    if (f.nz < 5)
        throw InsufficientDataError("boundary shear needs at least 5 rows");
    static constexpr double w[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
    std::vector<double> r(f.nr), ur(f.nr), ut(f.nr);
    for (int i = 0; i < f.nr; ++i) {
        double a = 0, b = 0;
        for (int j = 0; j < 5; ++j) {
            a += w[j] * f.u_r[f.idx(i, j)];
            b += w[j] * f.u_theta[f.idx(i, j)];
        }
        r[i] = f.r(i);
        ur[i] = a / (12.0 * f.dz);
        ut[i] = b / (12.0 * f.dz);
    }
    return make_shear(std::move(r), std::move(ur), std::move(ut));
}

BoundaryShear synthetic_shear(double s, const std::function<double(double)>& g, double r_max, int n) {
    if (std::abs(s) > 1)
        throw DomainError("rate of swirl must satisfy |S| <= 1");
    std::vector<double> r(n), ur(n), ut(n);
    const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
    for (int i = 0; i < n; ++i) {
        r[i] = r_max * i / (n - 1);
        ur[i] = c * g(r[i]);
        ut[i] = s * g(r[i]);
    }
    return make_shear(std::move(r), std::move(ur), std::move(ut));
}

Vec2 swirl_direction(double S, double theta) {
    if (!(std::abs(S) <= 1.0))
        throw DomainError("rate of swirl must satisfy |S| <= 1");
    const double c = std::cos(theta), s = std::sin(theta);
    const double q = std::sqrt(1.0 - S * S);
    return {S * -s + q * c, S * c + q * s};
}

ShearField::ShearField(const BoundaryShear& s)
    : ur_(s.r_grid, s.dzur), ut_(s.r_grid, s.dzutheta), dr_(s.r_grid[1] - s.r_grid[0]) {}

Vec2 ShearField::operator()(const Vec2& x) const {
    const double r = norm(x);
    if (r == 0.0)
        return {0.0, 0.0};
    const double c = x[0] / r, s = x[1] / r;
    const double a = ur_(r), b = ut_(r);
    return {a * c - b * s, a * s + b * c};
}

double ShearField::vh(double r) const { return std::hypot(ur_(r), ut_(r)); }

double ShearField::S(double r) const {
    double v = vh(r);
    return v > 0 ? ut_(r) / v : std::numeric_limits<double>::quiet_NaN();
}

double ShearField::dS_dr(double r) const {
    const double a = ur_(r), b = ut_(r), da = ur_.derivative(r), db = ut_.derivative(r);
    const double q = a * a + b * b;
    if (q == 0)
        return std::numeric_limits<double>::quiet_NaN();
    return a * (a * db - b * da) / (q * std::sqrt(q));
}

double ShearField::refine_max(double r0) const {
    // Maximise q(r) = |v_h|^2 by safeguarded Newton on q'(r).
    auto dq = [&](double r) { return ur_(r) * ur_.derivative(r) + ut_(r) * ut_.derivative(r); };
    auto d2q = [&](double r) {
        double a = ur_.derivative(r), b = ut_.derivative(r);
        return a * a + b * b + ur_(r) * ur_.second_derivative(r) + ut_(r) * ut_.second_derivative(r);
    };
    double lo = std::max(ur_.x_min(), r0 - 2 * dr_), hi = std::min(ur_.x_max(), r0 + 2 * dr_);
    double r = r0;
    for (int it = 0; it < 60; ++it) {
        double g = dq(r), h = d2q(r);
        double next = (h < 0) ? r - g / h : (g > 0 ? 0.5 * (r + hi) : 0.5 * (r + lo));
        if (next <= lo || next >= hi)
            next = 0.5 * (r + (g > 0 ? hi : lo));
        if (g > 0)
            lo = r;
        else
            hi = r;
        if (std::abs(next - r) < 1e-14 * std::max(1.0, std::abs(r)))
            return next;
        r = next;
    }
    return r;
}

} // namespace swirl
