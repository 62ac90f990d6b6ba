#pragma once

#include <swirllab/frame.hpp>
#include <swirllab/sampler.hpp>
#include <swirllab/vec.hpp>

#include <array>
#include <functional>

namespace swirl {

// Indices: 0 = z, 1 = rbar, 2 = thetabar.  gamma[k][i][j] = Gamma^k_{ij}.
struct ChristoffelTable {
    double gamma[3][3][3] = {};
    double operator()(int k, int i, int j) const { return gamma[k][i][j]; }
};

// Test hook: flips the sign of Gamma^rbar_{thetabar thetabar}.
struct GeometryMutation {
    bool flip_christoffel = false;
};

ChristoffelTable christoffel(const CurvilinearFrame& frame, double rbar, double tb, GeometryMutation m = {});

// 2-form components on (dz^drbar, drbar^dthetabar, dthetabar^dz) -> 1-form on (dz, drbar, dthetabar).
Vec3 hodge_star_2form(const Vec3& w, double f);
Vec3 hodge_star_2form(const Vec3& w, const CurvilinearFrame& frame, double rbar, double tb);
// 1-form on (dz, drbar, dthetabar) -> 2-form components on the basis above.
Vec3 hodge_star_1form(const Vec3& w, double f);

struct FdSteps {
    double hz = 1e-3;
    double hr = 1e-3;
    double ht = 1e-3;
};

using ChartScalar = std::function<double(double z, double rbar, double tb)>;

// Tensor-product 4th-order stencils; one-sided in z when the function may not
// be evaluated below the wall.
double chart_partial(const ChartScalar& g, double z, double rbar, double tb, int oz, int orr, int ot,
                     const FdSteps& h, bool below_ok);

struct FrameOperators {
    const FrameField& u;
    const CurvilinearFrame& frame;
    FdSteps h;

    double divergence(double z, double rbar, double tb) const;
    // The three bracketed expressions of the curl-curl display (components on dz, drbar, f dthetabar).
    Vec3 curl_curl(double z, double rbar, double tb) const;
    // Vector Laplacian; requires |div u| <= div_tol at the point.
    Vec3 laplacian(double z, double rbar, double tb, double div_tol = 1e-8) const;
    // Physical components of the covariant derivative of u along itself.
    Vec3 advection(double z, double rbar, double tb) const;

    ChartScalar component(int c) const;
    double partial(int c, double z, double rbar, double tb, int oz, int orr, int ot) const;
};

double divergence_frame(const FrameField& u, const CurvilinearFrame& frame, double z, double rbar, double tb,
                        const FdSteps& h = {});
Vec3 curl_curl_frame(const FrameField& u, const CurvilinearFrame& frame, double z, double rbar, double tb,
                     const FdSteps& h = {});
Vec3 laplacian_frame(const FrameField& u, const CurvilinearFrame& frame, double z, double rbar, double tb,
                     const FdSteps& h = {}, double div_tol = 1e-8);
Vec3 covariant_derivative_frame(const FrameField& u, const CurvilinearFrame& frame, double z, double rbar,
                                double tb, const FdSteps& h = {});

// Simplified boundary formulas at the chart origin, in order
// dz g(., e2), dz g(., e3), drbar g(., e1), dthetabar g(., e1) of the curl-curl display.
struct BoundaryIdentities {
    double dz_e2, dz_e3, dr_e1, dt_e1;
};
BoundaryIdentities boundary_identities(const FrameField& u, const CurvilinearFrame& frame, const FdSteps& h = {},
                                       double noslip_tol = 1e-8);

// The same four quantities as derivatives of the full curl_curl_frame output.
BoundaryIdentities boundary_identities_full(const FrameField& u, const CurvilinearFrame& frame,
                                            const FdSteps& h = {});

// Mixed partials of a scalar at (z, 0, tb): (1/f) dz(dthetabar p) and dthetabar(dz p).
std::array<double, 2> pressure_mixed_partials(const ChartScalar& p, const CurvilinearFrame& frame, double z,
                                              double tb, const FdSteps& h = {}, bool below_ok = true);

} // namespace swirl
