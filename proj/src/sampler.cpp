#include <swirllab/errors.hpp>
#include <swirllab/sampler.hpp>

#include <algorithm>
#include <cmath>

namespace swirl {

AxisymSampler::AxisymSampler(const AxisymField& f) : nr_(f.nr), nz_(f.nz), dr_(f.dr), dz_(f.dz) {
    std::vector<double> r(f.nr);
    for (int i = 0; i < f.nr; ++i)
        r[i] = f.r(i);
    ur_.reserve(f.nz);
    ut_.reserve(f.nz);
    uz_.reserve(f.nz);
    std::vector<double> a(f.nr), b(f.nr), c(f.nr);
    for (int j = 0; j < f.nz; ++j) {
        for (int i = 0; i < f.nr; ++i) {
            a[i] = f.u_r[f.idx(i, j)];
            b[i] = f.u_theta[f.idx(i, j)];
            c[i] = f.u_z[f.idx(i, j)];
        }
        ur_.emplace_back(r, a);
        ut_.emplace_back(r, b);
        uz_.emplace_back(r, c, 0.0); // even about the axis
    }
}

Vec3 AxisymSampler::cylindrical(double r, double z) const {
    if (z < -1e-12 || z > (nz_ - 1) * dz_ * (1 + 1e-12) || r < 0 || r > (nr_ - 1) * dr_ * (1 + 1e-12))
        throw ChartError("sample point outside the simulation domain");
    const double p = z / dz_;
    const double pr = std::round(p);
    if (std::abs(p - pr) < 1e-9) {
        auto j = static_cast<std::size_t>(pr);
        return {ur_[j](r), ut_[j](r), uz_[j](r)};
    }
    int base = std::clamp(static_cast<int>(std::floor(p)) - 1, 0, nz_ - 4);
    double x = p - base;
    Vec3 out{0, 0, 0};
    for (int m = 0; m < 4; ++m) {
        double w = 1.0;
        for (int q = 0; q < 4; ++q)
            if (q != m)
                w *= (x - q) / static_cast<double>(m - q);
        auto j = static_cast<std::size_t>(base + m);
        out = out + w * Vec3{ur_[j](r), ut_[j](r), uz_[j](r)};
    }
    return out;
}

Vec3 AxisymSampler::velocity(const Vec3& x) const {
    const double r = std::hypot(x[0], x[1]);
    Vec3 c = cylindrical(r, x[2]);
    if (r == 0)
        return {0.0, 0.0, c[2]};
    const double cs = x[0] / r, sn = x[1] / r;
    return {c[0] * cs - c[1] * sn, c[0] * sn + c[1] * cs, c[2]};
}

Vec3 FrameView::components(double z, double rbar, double tb) const {
    Vec3 x = frame_.chart(z, rbar, tb);
    Vec3 u = u_.velocity(x);
    Vec2 N = frame_.normal_at(tb), T = frame_.tangent_at(tb);
    return {u[2], u[0] * N[0] + u[1] * N[1], u[0] * T[0] + u[1] * T[1]};
}

} // namespace swirl
