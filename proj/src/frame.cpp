#include <swirllab/errors.hpp>
#include <swirllab/frame.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swirl {

namespace {

constexpr int kPad = 8;

Vec2 unit_field(const ShearField& v, const Vec2& p, double vmin) {
    Vec2 w = v(p);
    double m = norm(w);
    if (!(m > vmin))
        throw DegenerateFieldError("shear magnitude below threshold along the integral curve");
    return (1.0 / m) * w;
}

Vec2 rk4(const ShearField& v, Vec2 p, double h, double vmin) {
    Vec2 k1 = unit_field(v, p, vmin);
    Vec2 k2 = unit_field(v, p + (0.5 * h) * k1, vmin);
    Vec2 k3 = unit_field(v, p + (0.5 * h) * k2, vmin);
    Vec2 k4 = unit_field(v, p + h * k3, vmin);
    return p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void finish(CurvilinearFrame& fr, double kappa_min) {
    const std::size_t n = fr.size();
    const double s = fr.spacing;
    fr.kappa.assign(n, 0.0);
    fr.dkappa.assign(n, 0.0);
    fr.normal.assign(n, {0.0, 0.0});
    // phi'' as the derivative of the unit tangent phi' = T
    for (std::size_t k = 2; k + 2 < n; ++k) {
        Vec2 acc = (1.0 / (12.0 * s))
                   * (fr.tangent[k - 2] - 8.0 * fr.tangent[k - 1] + 8.0 * fr.tangent[k + 1] - 1.0 * fr.tangent[k + 2]);
        double ks = cross(fr.tangent[k], acc);
        fr.kappa[k] = std::abs(ks);
        fr.normal[k] = (ks >= 0 ? 1.0 : -1.0) * perp(fr.tangent[k]);
    }
    for (std::size_t k = 4; k + 4 < n; ++k)
        fr.dkappa[k] = (fr.kappa[k - 2] - 8.0 * fr.kappa[k - 1] + 8.0 * fr.kappa[k + 1] - fr.kappa[k + 2]) / (12.0 * s);
    for (std::size_t k = 4; k + 4 < n; ++k)
        if (!(fr.kappa[k] > kappa_min))
            throw ChartError("curvature vanishes along the integral curve");
}

std::vector<double> lagrange_weights(double x, int m) {
    // nodes 0..m-1, evaluation at x
    std::vector<double> w(m, 1.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (j != i)
                w[i] *= (x - j) / static_cast<double>(i - j);
    return w;
}

} // namespace

double CurvilinearFrame::max_kappa() const {
    double m = 0;
    for (std::size_t k = 4; k + 4 < kappa.size(); ++k)
        m = std::max(m, kappa[k]);
    return m;
}

double CurvilinearFrame::rbar_limit() const {
    double m = max_kappa();
    return m > 0 ? 1.0 / m : std::numeric_limits<double>::infinity();
}

template <class T>
T CurvilinearFrame::interp(const std::vector<T>& v, double tb) const {
    const double p = tb / spacing + n_ext;
    const double pr = std::round(p);
    if (std::abs(p - pr) < 1e-9) {
        auto k = static_cast<std::size_t>(pr);
        if (k < v.size())
            return v[k];
    }
    const int base = static_cast<int>(std::floor(p)) - 2;
    if (base < 4 || base + 5 >= static_cast<int>(v.size()) - 4)
        throw ChartError("thetabar outside the sampled range");
    auto w = lagrange_weights(p - base, 6);
    T acc{};
    for (int i = 0; i < 6; ++i) {
        if constexpr (std::is_same_v<T, double>)
            acc += w[i] * v[base + i];
        else
            acc = acc + w[i] * v[base + i];
    }
    return acc;
}

Vec2 CurvilinearFrame::phi_at(double tb) const { return interp(phi, tb); }
Vec2 CurvilinearFrame::tangent_at(double tb) const { return interp(tangent, tb); }
Vec2 CurvilinearFrame::normal_at(double tb) const { return interp(normal, tb); }
double CurvilinearFrame::kappa_at(double tb) const { return interp(kappa, tb); }
double CurvilinearFrame::dkappa_at(double tb) const { return interp(dkappa, tb); }

void CurvilinearFrame::check(double rbar, double tb) const {
    if (!(std::abs(tb) <= delta * (1 + 1e-12)))
        throw ChartError("thetabar outside the chart range");
    if (!(std::abs(rbar) < rbar_limit()))
        throw ChartError("rbar outside the chart range");
}

Vec3 CurvilinearFrame::chart(double z, double rbar, double tb) const {
    check(rbar, tb);
    Vec2 p = phi_at(tb) + rbar * normal_at(tb);
    return {p[0], p[1], z};
}

CurvilinearFrame integrate_curve(const ShearField& v, double y, const FrameOptions& opt) {
    if (!(y > 0))
        throw DomainError("base point must be away from the axis");
    const double s = opt.spacing;
    double delta = opt.delta > 0 ? opt.delta : std::min(0.5 * std::numbers::pi * y, 0.3 * y);
    // Curvature of the curve is about 1/y in the swirl-dominant regime; trim below.
    int n = std::max(4, static_cast<int>(std::ceil(delta / s - 1e-9)));
    const double vmin = std::max(opt.vh_min_abs, opt.vh_min_rel * v.vh(y));

    CurvilinearFrame fr;
    fr.y = y;
    fr.spacing = s;
    fr.n_ext = n + kPad;
    const int total = 2 * fr.n_ext + 1;
    fr.thetabar_grid.resize(total);
    fr.phi.resize(total);
    fr.tangent.resize(total);
    for (int k = 0; k < total; ++k)
        fr.thetabar_grid[k] = (k - fr.n_ext) * s;
    fr.phi[fr.n_ext] = {y, 0.0};
    const double h = s / opt.substeps;
    for (int dir : {1, -1}) {
        Vec2 p = fr.phi[fr.n_ext];
        for (int k = 1; k <= fr.n_ext; ++k) {
            for (int q = 0; q < opt.substeps; ++q)
                p = rk4(v, p, dir * h, vmin);
            fr.phi[fr.n_ext + dir * k] = p;
        }
    }
    for (int k = 0; k < total; ++k)
        fr.tangent[k] = unit_field(v, fr.phi[k], vmin);
    finish(fr, opt.kappa_min);
    fr.delta = n * s;
    if (opt.delta <= 0) {
        double lim = 0.3 / fr.max_kappa();
        if (lim < fr.delta)
            fr.delta = std::max(4.0, std::floor(lim / s)) * s;
    }
    return fr;
}

CurvilinearFrame integrate_curve(const BoundaryShear& shear, double y, double delta, int n) {
    FrameOptions opt;
    opt.delta = delta;
    opt.spacing = delta / n;
    return integrate_curve(ShearField(shear), y, opt);
}

CurvilinearFrame circle_frame(double R, double delta, double spacing) {
    CurvilinearFrame fr;
    fr.y = R;
    fr.spacing = spacing;
    int n = static_cast<int>(std::ceil(delta / spacing - 1e-9));
    fr.n_ext = n + kPad;
    fr.delta = n * spacing;
    const int total = 2 * fr.n_ext + 1;
    for (int k = 0; k < total; ++k) {
        double tb = (k - fr.n_ext) * spacing, a = tb / R;
        fr.thetabar_grid.push_back(tb);
        fr.phi.push_back({R * std::cos(a), R * std::sin(a)});
        fr.tangent.push_back({-std::sin(a), std::cos(a)});
        fr.normal.push_back({-std::cos(a), -std::sin(a)});
        fr.kappa.push_back(1.0 / R);
        fr.dkappa.push_back(0.0);
    }
    return fr;
}

CurvilinearFrame line_frame(double y, double delta, double spacing) {
    CurvilinearFrame fr;
    fr.y = y;
    fr.spacing = spacing;
    fr.flat = true;
    int n = static_cast<int>(std::ceil(delta / spacing - 1e-9));
    fr.n_ext = n + kPad;
    fr.delta = n * spacing;
    const int total = 2 * fr.n_ext + 1;
    for (int k = 0; k < total; ++k) {
        double tb = (k - fr.n_ext) * spacing;
        fr.thetabar_grid.push_back(tb);
        fr.phi.push_back({y, tb});
        fr.tangent.push_back({0.0, 1.0});
        fr.normal.push_back({-1.0, 0.0});
        fr.kappa.push_back(0.0);
        fr.dkappa.push_back(0.0);
    }
    return fr;
}

} // namespace swirl
