#include <swirllab/errors.hpp>
#include <swirllab/geometry.hpp>

#include <cmath>
#include <span>

namespace swirl {

ChristoffelTable christoffel(const CurvilinearFrame& frame, double rbar, double tb, GeometryMutation m) {
    const double kappa = frame.kappa_at(tb);
    const double f = 1.0 - rbar * kappa;
    if (!(f > 0))
        throw ChartError("metric factor f <= 0");
    const double df_r = -kappa;
    const double df_t = -rbar * frame.dkappa_at(tb);
    ChristoffelTable g;
    g.gamma[1][2][2] = (m.flip_christoffel ? 1.0 : -1.0) * f * df_r;
    g.gamma[2][1][2] = g.gamma[2][2][1] = df_r / f;
    g.gamma[2][2][2] = df_t / f;
    return g;
}

Vec3 hodge_star_2form(const Vec3& w, double f) {
    if (!(f > 0))
        throw ChartError("metric factor f <= 0");
    // *(dz^dr) = f dt, *(dr^dt) = dz / f, *(dt^dz) = dr / f
    return {w[1] / f, w[2] / f, f * w[0]};
}

Vec3 hodge_star_2form(const Vec3& w, const CurvilinearFrame& frame, double rbar, double tb) {
    return hodge_star_2form(w, frame.f(rbar, tb));
}

Vec3 hodge_star_1form(const Vec3& w, double f) {
    if (!(f > 0))
        throw ChartError("metric factor f <= 0");
    // *dz = f dr^dt, *dr = f dt^dz, *dt = (1/f) dz^dr
    return {w[2] / f, f * w[0], f * w[1]};
}

namespace {

struct Stencil {
    int first;
    std::span<const double> w;
    double scale_pow;
};

constexpr double c1[] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
constexpr double c2[] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
constexpr double c3[] = {1.0 / 8, -8.0 / 8, 13.0 / 8, 0.0, -13.0 / 8, 8.0 / 8, -1.0 / 8};
constexpr double f1[] = {-25.0 / 12, 48.0 / 12, -36.0 / 12, 16.0 / 12, -3.0 / 12};
constexpr double f2[] = {45.0 / 12, -154.0 / 12, 214.0 / 12, -156.0 / 12, 61.0 / 12, -10.0 / 12};
constexpr double f3[] = {-2.5, 9.0, -12.0, 7.0, -1.5};
constexpr double c0[] = {1.0};

Stencil central(int order) {
    switch (order) {
    case 0: return {0, c0, 0};
    case 1: return {-2, c1, 1};
    case 2: return {-2, c2, 2};
    case 3: return {-3, c3, 3};
    }
    throw DomainError("finite-difference order above 3");
}

Stencil forward(int order) {
    switch (order) {
    case 0: return {0, c0, 0};
    case 1: return {0, f1, 1};
    case 2: return {0, f2, 2};
    case 3: return {0, f3, 3};
    }
    throw DomainError("finite-difference order above 3");
}

} // namespace

double chart_partial(const ChartScalar& g, double z, double rbar, double tb, int oz, int orr, int ot,
                     const FdSteps& h, bool below_ok) {
    Stencil sz = central(oz);
    if (!below_ok && oz > 0 && z + sz.first * h.hz < -1e-12 * h.hz)
        sz = forward(oz);
    const Stencil sr = central(orr), st = central(ot);
    const double scale = 1.0 / (std::pow(h.hz, sz.scale_pow) * std::pow(h.hr, sr.scale_pow) * std::pow(h.ht, st.scale_pow));
    double acc = 0.0;
    for (std::size_t a = 0; a < sz.w.size(); ++a) {
        if (sz.w[a] == 0.0)
            continue;
        const double zz = z + (sz.first + static_cast<int>(a)) * h.hz;
        for (std::size_t b = 0; b < sr.w.size(); ++b) {
            if (sr.w[b] == 0.0)
                continue;
            const double rr = rbar + (sr.first + static_cast<int>(b)) * h.hr;
            for (std::size_t c = 0; c < st.w.size(); ++c) {
                if (st.w[c] == 0.0)
                    continue;
                const double tt = tb + (st.first + static_cast<int>(c)) * h.ht;
                acc += sz.w[a] * sr.w[b] * st.w[c] * g(zz, rr, tt);
            }
        }
    }
    return acc * scale;
}

ChartScalar FrameOperators::component(int c) const {
    const FrameField* uu = &u;
    return [uu, c](double z, double r, double t) { return uu->components(z, r, t)[c]; };
}

double FrameOperators::partial(int c, double z, double rbar, double tb, int oz, int orr, int ot) const {
    return chart_partial(component(c), z, rbar, tb, oz, orr, ot, h, u.extends_below_wall());
}

double FrameOperators::divergence(double z, double rbar, double tb) const {
    frame.check(rbar, tb);
    const bool below = u.extends_below_wall();
    const CurvilinearFrame* fr = &frame;
    auto uz_f = [this, fr](double zz, double r, double t) { return u.components(zz, r, t)[0] * fr->f(r, t); };
    auto ur_f = [this, fr](double zz, double r, double t) { return u.components(zz, r, t)[1] * fr->f(r, t); };
    const double f = frame.f(rbar, tb);
    return (chart_partial(uz_f, z, rbar, tb, 1, 0, 0, h, below) + chart_partial(ur_f, z, rbar, tb, 0, 1, 0, h, below)
            + partial(2, z, rbar, tb, 0, 0, 1))
           / f;
}

Vec3 FrameOperators::curl_curl(double z, double rbar, double tb) const {
    frame.check(rbar, tb);
    const bool below = u.extends_below_wall();
    const FdSteps hh = h;
    const CurvilinearFrame* fr = &frame;
    const FrameField* uu = &u;
    auto uz = component(0), ur = component(1);
    ChartScalar utf = [uu, fr](double zz, double r, double t) { return uu->components(zz, r, t)[2] * fr->f(r, t); };
    auto P = [&](const ChartScalar& g, int a, int b, int c) { return chart_partial(g, z, rbar, tb, a, b, c, hh, below); };

    const double f = frame.f(rbar, tb);
    const double df_r = -frame.kappa_at(tb);
    const double df_t = -rbar * frame.dkappa_at(tb);

    // dz row: d_r((dz u_r - d_r u_z) f) + d_t((dz u_t f - d_t u_z) / f), all over f
    ChartScalar A1 = [=](double zz, double r, double t) {
        return (chart_partial(ur, zz, r, t, 1, 0, 0, hh, below) - chart_partial(uz, zz, r, t, 0, 1, 0, hh, below))
               * fr->f(r, t);
    };
    ChartScalar A2 = [=](double zz, double r, double t) {
        return (chart_partial(utf, zz, r, t, 1, 0, 0, hh, below) - chart_partial(uz, zz, r, t, 0, 0, 1, hh, below))
               / fr->f(r, t);
    };
    const double cz = (P(A1, 0, 1, 0) + P(A2, 0, 0, 1)) / f;

    const double X = P(utf, 0, 1, 0) - P(ur, 0, 0, 1);
    const double cr = ((P(utf, 0, 1, 1) - P(ur, 0, 0, 2)) / f - df_t / (f * f) * X) / f
                      + (P(uz, 1, 1, 0) - P(ur, 2, 0, 0));

    const double ct = (P(uz, 1, 0, 1) - P(utf, 2, 0, 0)) / f + (P(ur, 0, 1, 1) - P(utf, 0, 2, 0)) / f
                      + X * df_r / (f * f);
    return {cz, cr, ct};
}

Vec3 FrameOperators::laplacian(double z, double rbar, double tb, double div_tol) const {
    const double d = divergence(z, rbar, tb);
    if (!(std::abs(d) <= div_tol))
        throw PreconditionError("field is not divergence-free at the evaluation point", d);
    Vec3 c = curl_curl(z, rbar, tb);
    return {-c[0], -c[1], -c[2]};
}

Vec3 FrameOperators::advection(double z, double rbar, double tb) const {
    frame.check(rbar, tb);
    const Vec3 v = u.components(z, rbar, tb);
    const double a = v[0], b = v[1], c = v[2];
    const double f = frame.f(rbar, tb);
    const double df_r = -frame.kappa_at(tb);
    auto grad = [&](int k) {
        return Vec3{partial(k, z, rbar, tb, 1, 0, 0), partial(k, z, rbar, tb, 0, 1, 0), partial(k, z, rbar, tb, 0, 0, 1)};
    };
    const Vec3 gz = grad(0), gr = grad(1), gt = grad(2);
    const double e1 = a * gz[0] + b * gz[1] + c / f * gz[2];
    const double e2 = a * gr[0] + b * gr[1] + c / f * (gr[2] - c * df_r);
    const double e3 = a * gt[0] + b * gt[1] + c / f * (gt[2] + b * df_r);
    return {e1, e2, e3};
}

double divergence_frame(const FrameField& u, const CurvilinearFrame& frame, double z, double rbar, double tb,
                        const FdSteps& h) {
    return FrameOperators{u, frame, h}.divergence(z, rbar, tb);
}

Vec3 curl_curl_frame(const FrameField& u, const CurvilinearFrame& frame, double z, double rbar, double tb,
                     const FdSteps& h) {
    return FrameOperators{u, frame, h}.curl_curl(z, rbar, tb);
}

Vec3 laplacian_frame(const FrameField& u, const CurvilinearFrame& frame, double z, double rbar, double tb,
                     const FdSteps& h, double div_tol) {
    return FrameOperators{u, frame, h}.laplacian(z, rbar, tb, div_tol);
}

Vec3 covariant_derivative_frame(const FrameField& u, const CurvilinearFrame& frame, double z, double rbar,
                                double tb, const FdSteps& h) {
    return FrameOperators{u, frame, h}.advection(z, rbar, tb);
}

BoundaryIdentities boundary_identities(const FrameField& u, const CurvilinearFrame& frame, const FdSteps& h,
                                       double noslip_tol) {
    FrameOperators ops{u, frame, h};
    for (int c = 0; c < 3; ++c) {
        double worst = std::max({std::abs(u.components(0, 0, 0)[c]), std::abs(ops.partial(c, 0, 0, 0, 0, 1, 0)),
                                 std::abs(ops.partial(c, 0, 0, 0, 0, 0, 1))});
        if (!(worst <= noslip_tol))
            throw PreconditionError("field does not satisfy no-slip at the chart origin", worst);
    }
    const bool below = u.extends_below_wall();
    const CurvilinearFrame* fr = &frame;
    const FrameField* uu = &u;
    auto uz = ops.component(0), ur = ops.component(1), ut = ops.component(2);
    ChartScalar utf = [uu, fr](double z, double r, double t) { return uu->components(z, r, t)[2] * fr->f(r, t); };
    ChartScalar urf = [uu, fr](double z, double r, double t) { return uu->components(z, r, t)[1] * fr->f(r, t); };
    auto P = [&](const ChartScalar& g, int a, int b, int c) { return chart_partial(g, 0, 0, 0, a, b, c, h, below); };
    const double df_r = -frame.kappa_at(0.0);

    BoundaryIdentities out;
    out.dz_e2 = P(utf, 1, 1, 1) - P(ur, 1, 0, 2) + P(uz, 2, 1, 0) - P(ur, 3, 0, 0);
    out.dz_e3 = P(uz, 2, 0, 1) - P(utf, 3, 0, 0) + P(ur, 1, 1, 1) - P(utf, 1, 2, 0)
                + df_r * (P(utf, 1, 1, 0) - P(ur, 1, 0, 1));
    out.dr_e1 = P(urf, 1, 2, 0) + P(ut, 1, 1, 1) - (P(urf, 1, 1, 0) + P(ut, 1, 0, 1)) * df_r;
    out.dt_e1 = P(urf, 1, 1, 1) + P(ut, 1, 0, 2);
    return out;
}

BoundaryIdentities boundary_identities_full(const FrameField& u, const CurvilinearFrame& frame, const FdSteps& h) {
    FrameOperators ops{u, frame, h};
    const bool below = u.extends_below_wall();
    auto cc = [&ops](int k) {
        return ChartScalar([&ops, k](double z, double r, double t) { return ops.curl_curl(z, r, t)[k]; });
    };
    BoundaryIdentities out;
    out.dz_e2 = chart_partial(cc(1), 0, 0, 0, 1, 0, 0, h, below);
    out.dz_e3 = chart_partial(cc(2), 0, 0, 0, 1, 0, 0, h, below);
    out.dr_e1 = chart_partial(cc(0), 0, 0, 0, 0, 1, 0, h, below);
    out.dt_e1 = chart_partial(cc(0), 0, 0, 0, 0, 0, 1, h, below);
    return out;
}

std::array<double, 2> pressure_mixed_partials(const ChartScalar& p, const CurvilinearFrame& frame, double z,
                                              double tb, const FdSteps& h, bool below_ok) {
    frame.check(0.0, tb);
    ChartScalar dt_p = [&](double zz, double r, double t) { return chart_partial(p, zz, r, t, 0, 0, 1, h, below_ok); };
    ChartScalar dz_p = [&](double zz, double r, double t) { return chart_partial(p, zz, r, t, 1, 0, 0, h, below_ok); };
    const double lhs = chart_partial(dt_p, z, 0, tb, 1, 0, 0, h, below_ok) / frame.f(0.0, tb);
    const double rhs = chart_partial(dz_p, z, 0, tb, 0, 0, 1, h, below_ok);
    return {lhs, rhs};
}

} // namespace swirl
