#include <doctest.h>

#include <swirllab/errors.hpp>
#include <swirllab/frame.hpp>
#include <swirllab/geometry.hpp>
#include <swirllab/manufactured.hpp>
#include <swirllab/oracle.hpp>

#include <cmath>
#include <functional>
#include <random>

using namespace swirl;

namespace {

class LambdaFrameField : public FrameField {
public:
    explicit LambdaFrameField(std::function<Vec3(double, double, double)> f) : f_(std::move(f)) {}
    Vec3 components(double z, double r, double t) const override { return f_(z, r, t); }
    bool extends_below_wall() const override { return true; }

private:
    std::function<Vec3(double, double, double)> f_;
};

CurvilinearFrame numeric_frame(double s, double y, double spacing = 2.5e-4) {
    auto shear = synthetic_shear(s, [](double r) { return 1.0 + r; }, 1.0, 201);
    FrameOptions o;
    o.spacing = spacing;
    return integrate_curve(ShearField(shear), y, o);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace

TEST_CASE("swirl direction") {
    auto e = swirl_direction(1.0, 0.0);
    CHECK(e[0] == doctest::Approx(0.0));
    CHECK(e[1] == doctest::Approx(1.0));
    e = swirl_direction(0.0, 0.0);
    CHECK(e[0] == doctest::Approx(1.0));
    CHECK(e[1] == doctest::Approx(0.0));
    e = swirl_direction(1.0 / std::sqrt(2.0), 0.0);
    CHECK(e[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(e[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(norm(swirl_direction(0.3, 1.1)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(swirl_direction(1.01, 0.0), DomainError);
}

TEST_CASE("shear invariants") {
    auto sh = synthetic_shear(0.8, [](double r) { return r * (1 - r); }, 1.0, 51);
    for (std::size_t i = 1; i + 1 < sh.r_grid.size(); ++i) {
        CHECK(sh.S[i] * sh.S[i] <= 1.0);
        CHECK(sh.S[i] * sh.vh_mag[i] == doctest::Approx(sh.dzutheta[i]));
        CHECK(std::sqrt(1 - sh.S[i] * sh.S[i]) * sh.vh_mag[i] == doctest::Approx(std::abs(sh.dzur[i])));
    }
    CHECK(std::isnan(sh.S[0]));
    CHECK_FALSE(sh.S_defined(0));
}

TEST_CASE("circle chart has curvature 1/R") {
    for (double R : {0.05, 0.1, 0.5}) {
        auto fr = numeric_frame(1.0, R);
        double worst = 0;
        for (std::size_t k = 4; k + 4 < fr.size(); ++k)
            worst = std::max({worst, std::abs(fr.kappa[k] - 1.0 / R), std::abs(fr.dkappa[k])});
        CHECK(worst <= 1e-6);
        CHECK(fr.phi[fr.n_ext][0] == R);
        CHECK(fr.phi[fr.n_ext][1] == 0.0);
        // unit speed of the sampled curve
        double speed = 0;
        for (std::size_t k = 2; k + 2 < fr.size(); ++k) {
            Vec2 d = (1.0 / (12 * fr.spacing))
                     * (fr.phi[k - 2] - 8.0 * fr.phi[k - 1] + 8.0 * fr.phi[k + 1] - 1.0 * fr.phi[k + 2]);
            speed = std::max(speed, std::abs(norm(d) - 1.0));
        }
        CHECK(speed <= 1e-8);
        // inward normal
        Vec3 p = fr.chart(0, 0.2 * R, 0);
        CHECK(p[0] == doctest::Approx(0.8 * R).epsilon(1e-12));
        CHECK(std::abs(p[1]) < 1e-14);
    }
}

TEST_CASE("constant-S spiral matches a refined integration") {
    auto coarse = numeric_frame(0.97, 0.3, 1e-3);
    auto fine = numeric_frame(0.97, 0.3, 1e-4);
    double worst = 0;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        double tb = coarse.thetabar_grid[k];
        if (std::abs(tb) > coarse.delta)
            continue;
        worst = std::max(worst, norm(coarse.phi[k] - fine.phi_at(tb)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("chart examples and domain errors") {
    auto fr = circle_frame(0.5, 0.1, 1e-3);
    Vec3 p = fr.chart(0, 0, 0);
    CHECK(p[0] == 0.5);
    CHECK(p[1] == 0.0);
    p = fr.chart(0.3, 0, 0);
    CHECK(p[2] == 0.3);
    CHECK_THROWS_AS(fr.chart(0, 0, 0.2), ChartError);
    CHECK_THROWS_AS(fr.chart(0, 0.6, 0), ChartError);
}

TEST_CASE("degenerate shear and vanishing curvature") {
    auto zero = synthetic_shear(1.0, [](double) { return 0.0; }, 1.0, 101);
    FrameOptions o;
    o.delta = 0.1;
    o.spacing = 1e-2;
    CHECK_THROWS_AS(integrate_curve(ShearField(zero), 0.45, o), DegenerateFieldError);
    auto outward = synthetic_shear(0.5, [](double r) { return r < 0.5 ? 1.0 : 0.0; }, 1.0, 101);
    o.delta = 1.0;
    o.vh_min_abs = 1e-3;
    CHECK_THROWS_AS(integrate_curve(ShearField(outward), 0.4, o), DegenerateFieldError);
    o.vh_min_abs = 0.0;
    auto radial = synthetic_shear(0.0, [](double) { return 1.0; }, 1.0, 101);
    o.delta = 0.1;
    CHECK_THROWS_AS(integrate_curve(ShearField(radial), 0.4, o), ChartError);
}

TEST_CASE("Christoffel symbols") {
    auto line = line_frame(0.4, 0.1, 1e-3);
    auto g = christoffel(line, 0.05, 0.01);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(g(k, i, j) == 0.0);

    auto fr = numeric_frame(0.97, 0.3);
    auto g0 = christoffel(fr, 0.0, 0.0);
    double kappa = fr.kappa_at(0.0);
    CHECK(g0(1, 2, 2) == doctest::Approx(kappa));
    CHECK(g0(2, 1, 2) == doctest::Approx(-kappa));
    CHECK(g0(2, 2, 1) == doctest::Approx(-kappa));
    CHECK(g0(2, 2, 2) == 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    double worst = 0;
    for (int n = 0; n < 20; ++n) {
        double rb = 0.5 * U(rng) * fr.rbar_limit(), tb = 0.5 * U(rng) * fr.delta;
        auto a = christoffel(fr, rb, tb);
        auto b = christoffel_oracle(fr, rb, tb);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    worst = std::max(worst, std::abs(a(k, i, j) - b(k, i, j)));
    }
    MESSAGE("christoffel worst " << worst);
    CHECK(worst <= 1e-7);
    auto m = christoffel(fr, 0.01, 0.0, GeometryMutation{true});
    auto o = christoffel_oracle(fr, 0.01, 0.0);
    CHECK(std::abs(m(1, 2, 2) - o(1, 2, 2)) > 1e-3);
}

TEST_CASE("Hodge star") {
    Vec3 w = hodge_star_2form({1, 0, 0}, 1.0);
    CHECK(w[2] == 1.0);
    CHECK(w[0] == 0.0);
    w = hodge_star_2form({0, 1, 0}, 0.8);
    CHECK(w[0] == doctest::Approx(1.25));
    Vec3 v{0.3, -0.7, 1.9};
    Vec3 back = hodge_star_2form(hodge_star_1form(v, 0.7), 0.7);
    for (int i = 0; i < 3; ++i)
        CHECK(back[i] == doctest::Approx(v[i]));
    CHECK_THROWS_AS(hodge_star_2form(v, 0.0), ChartError);
}

TEST_CASE("frame operators on special fields") {
    auto fr = circle_frame(0.4, 0.1, 2.5e-4);
    LambdaFrameField zero([](double, double, double) { return Vec3{0, 0, 0}; });
    CHECK(divergence_frame(zero, fr, 0.1, 0.0, 0.0) == 0.0);
    auto L = laplacian_frame(zero, fr, 0.1, 0.0, 0.0);
    CHECK(L[0] == 0.0);
    auto A = covariant_derivative_frame(zero, fr, 0.1, 0.0, 0.0);
    CHECK(A[1] == 0.0);

    LambdaFrameField uz_const([](double, double, double) { return Vec3{2.5, 0, 0}; });
    CHECK(std::abs(divergence_frame(uz_const, fr, 0.1, 0.02, 0.01)) < 1e-10);

    // u_thetabar = z^2 at rbar = 0 with constant kappa: -2 + kappa^2 z^2 in the curl-curl display
    LambdaFrameField swirl2([](double z, double, double) { return Vec3{0, 0, z * z}; });
    const double k = 1.0 / 0.4, z = 0.1;
    auto cc = curl_curl_frame(swirl2, fr, z, 0.0, 0.0);
    CHECK(cc[2] == doctest::Approx(-2.0 + k * k * z * z).epsilon(1e-8));

    // u = c f dthetabar: centripetal part of the rbar component
    const double c = 0.7;
    LambdaFrameField circ([=](double, double, double) { return Vec3{0, 0, c}; });
    auto adv = covariant_derivative_frame(circ, fr, 0.0, 0.0, 0.0);
    CHECK(adv[1] == doctest::Approx(k * c * c));
    CHECK(std::abs(adv[0]) < 1e-12);
    CHECK(std::abs(adv[2]) < 1e-12);
}

TEST_CASE("frame operators agree with the Cartesian oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (double s : {1.0, 0.97}) {
        auto fr = numeric_frame(s, 0.35);
        for (auto kind : {FieldKind::PureSwirl, FieldKind::PolyNoSlip, FieldKind::TrigDivFree, FieldKind::ForcedNS}) {
            auto u = ManufacturedField::random(kind, rng);
            FrameView view(u, fr);
            double wd = 0, wl = 0, wa = 0;
            for (int n = 0; n < 20; ++n) {
                double z = 0.3 * std::abs(U(rng)), rb = 0.5 * U(rng) * fr.rbar_limit(), tb = 0.5 * U(rng) * fr.delta;
                double d = divergence_frame(view, fr, z, rb, tb);
                auto od = frame_transform_oracle(u, fr, OracleQuantity::Divergence, z, rb, tb);
                wd = std::max(wd, std::abs(d - od[0]));
                auto lap = laplacian_frame(view, fr, z, rb, tb);
                auto ol = frame_transform_oracle(u, fr, OracleQuantity::Laplacian, z, rb, tb);
                auto adv = covariant_derivative_frame(view, fr, z, rb, tb);
                auto oa = frame_transform_oracle(u, fr, OracleQuantity::Advection, z, rb, tb);
                for (int c = 0; c < 3; ++c) {
                    wl = std::max(wl, rel(lap[c], ol[c]));
                    wa = std::max(wa, rel(adv[c], oa[c]));
                }
            }
            MESSAGE(to_string(kind) << " S=" << s << " div " << wd << " lap " << wl << " adv " << wa);
            CHECK(wd <= 1e-6);
            CHECK(wl <= 1e-5);
            CHECK(wa <= 1e-5);
        }
    }
}

TEST_CASE("boundary identities match the full display") {
    std::mt19937_64 rng(5);
    auto fr = numeric_frame(0.99, 0.3);
    for (auto kind : {FieldKind::PolyNoSlip, FieldKind::TrigDivFree}) {
        auto u = ManufacturedField::random(kind, rng);
        FrameView view(u, fr);
        auto a = boundary_identities(view, fr);
        auto b = boundary_identities_full(view, fr);
        MESSAGE(a.dz_e2 << " " << b.dz_e2 << " | " << a.dz_e3 << " " << b.dz_e3 << " | " << a.dr_e1 << " "
                        << b.dr_e1 << " | " << a.dt_e1 << " " << b.dt_e1);
        CHECK(rel(a.dz_e2, b.dz_e2) <= 1e-5);
        CHECK(rel(a.dz_e3, b.dz_e3) <= 1e-5);
        CHECK(rel(a.dr_e1, b.dr_e1) <= 1e-5);
        CHECK(rel(a.dt_e1, b.dt_e1) <= 1e-5);
    }
    auto g = ManufacturedField::random(FieldKind::PolyGeneric, rng);
    FrameView gv(g, fr);
    CHECK_THROWS_AS(boundary_identities(gv, fr), PreconditionError);
    CHECK_THROWS_AS(laplacian_frame(gv, fr, 0.1, 0.0, 0.0), PreconditionError);
}
