#include <doctest.h>

#include <swirllab/diagnostics.hpp>
#include <swirllab/errors.hpp>
#include <swirllab/frame.hpp>
#include <swirllab/sampler.hpp>
#include <swirllab/synthetic.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace swirl;

namespace {

BoundaryShear profile_shear(const std::vector<double>& r, const std::vector<double>& v) {
    return make_shear(r, std::vector<double>(r.size(), 0.0), v);
}

std::vector<double> grid(int n, double dr) {
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i)
        r[i] = i * dr;
    return r;
}

double g_swirl(double r) { return r * std::exp(-r * r / 0.09); }
double dg_swirl(double r) { return (1.0 - 2.0 * r * r / 0.09) * std::exp(-r * r / 0.09); }
double d2g_swirl(double r) {
    const double e = std::exp(-r * r / 0.09);
    return (-4.0 * r / 0.09 - 2.0 * r / 0.09 + 4.0 * r * r * r / (0.09 * 0.09)) * e;
}

// u_theta = z^p g(r) on the solver grid.
AxisymField swirl_snapshot(int nr, int nz, int p) {
    AxisymField f(nr, nz, 1.0 / (nr - 1), 1.0 / (nz - 1));
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nz; ++j)
            f.u_theta[f.idx(i, j)] = std::pow(f.z(j), p) * g_swirl(f.r(i));
    return f;
}

class SwirlCubic : public CartesianField {
public:
    Vec3 velocity(const Vec3& x) const override {
        const double r = std::hypot(x[0], x[1]);
        const double s = x[2] * x[2] * x[2] * g_swirl(r) / r;
        return {-s * x[1], s * x[0], 0.0};
    }
};

class ZeroField : public CartesianField {
public:
    Vec3 velocity(const Vec3&) const override { return {0, 0, 0}; }
};

DiagnosticSample ode_sample(double t, double kappa, double alpha1, double F) {
    DiagnosticSample s;
    s.t = t;
    s.xi_r = 1.0;
    s.kappa = kappa;
    s.alpha1 = alpha1;
    s.alpha3 = -F;
    s.fill_derived();
    return s;
}

} // namespace

TEST_CASE("locate_xi examples") {
    const auto r = grid(41, 0.0125);
    std::vector<double> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        v[i] = std::exp(-std::pow(r[i] - 0.05, 2) / 0.01);
    auto loc = locate_xi(profile_shear(r, v));
    CHECK(loc.xi_r == doctest::Approx(0.05).epsilon(1e-14));
    CHECK_FALSE(loc.jump_flag);

    std::fill(v.begin(), v.end(), 2.0);
    CHECK(locate_xi(profile_shear(r, v)).xi_r == 0.0);

    const auto r2 = grid(64, 1.0 / 63);
    std::vector<double> p(r2.size());
    for (std::size_t i = 0; i < r2.size(); ++i)
        p[i] = 1.0 - (r2[i] - 0.3) * (r2[i] - 0.3);
    CHECK(std::abs(locate_xi(profile_shear(r2, p)).xi_r - 0.3) < 1e-10);

    std::fill(v.begin(), v.end(), 0.0);
    CHECK_THROWS_AS(locate_xi(profile_shear(r, v)), DegenerateFieldError);
}

TEST_CASE("locate_xi jump flag and scale equivariance") {
    const auto r = grid(101, 0.01);
    std::vector<double> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        v[i] = std::exp(-std::pow(r[i] - 0.4, 2) / 0.02);
    const auto sh = profile_shear(r, v);
    CHECK_FALSE(locate_xi(sh, 0.36).jump_flag);
    CHECK(locate_xi(sh, 0.34).jump_flag);
    CHECK(locate_xi(sh, 0.46).jump_flag);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> w(r.size());
        for (auto& x : w)
            x = U(rng);
        const double c = std::exp(8.0 * U(rng) - 4.0);
        std::vector<double> wc(w);
        for (auto& x : wc)
            x *= c;
        CHECK(locate_xi(profile_shear(r, wc)).xi_r == doctest::Approx(locate_xi(profile_shear(r, w)).xi_r).epsilon(1e-12));
    }
}

TEST_CASE("sample_diagnostics on a pure-swirl snapshot") {
    const auto f = swirl_snapshot(129, 17, 1);
    const double xi = 0.35;
    const auto s = sample_diagnostics(f, xi);
    CHECK(s.regime_ok);
    CHECK(s.S_at_xi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.kappa == doctest::Approx(1.0 / xi).epsilon(1e-6));
    CHECK(s.alpha1 == doctest::Approx(g_swirl(xi)).epsilon(1e-5));
    CHECK(std::abs(s.alpha2) < 1e-8);
    CHECK(std::abs(s.beta2) < 1e-8);
    // chain rule through the inward-normal circle chart: r = xi + rbar (N . e_r)
    const double ne = -1.0;
    CHECK(s.beta1 == doctest::Approx(dg_swirl(xi) * ne).epsilon(1e-4));
    CHECK(s.beta5 == doctest::Approx(d2g_swirl(xi)).epsilon(1e-3));
    CHECK(std::abs(s.beta3) < 1e-6);
    CHECK(std::abs(s.beta4) < 1e-6);
    CHECK(std::abs(s.alpha3) < 1e-8);
    CHECK(s.G == s.alpha1);
    CHECK(std::abs(s.G_printed) < 1e-12);
}

TEST_CASE("sample_frame_quantities on analytic fields") {
    const double R = 0.25;
    const auto frame = circle_frame(R, 0.2, 1e-4);
    SwirlCubic cubic;
    FrameView view(cubic, frame);
    const auto s = sample_frame_quantities(view, frame, {});
    CHECK(s.alpha3 == doctest::Approx(6.0 * g_swirl(R)).epsilon(1e-8));
    CHECK(std::abs(s.alpha1) < 1e-12);

    ZeroField zero;
    FrameView zv(zero, frame);
    const auto z = sample_frame_quantities(zv, frame, {});
    for (double x : {z.alpha1, z.alpha2, z.alpha3, z.beta1, z.beta2, z.beta3, z.beta4, z.beta5, z.F_proof, z.F_thm, z.G})
        CHECK(x == 0.0);
}

TEST_CASE("sample_diagnostics regime and degenerate handling") {
    AxisymField f(33, 17, 1.0 / 32, 1.0 / 16);
    CHECK_THROWS_AS(sample_diagnostics(f, 0.3), DegenerateFieldError);

    // mostly radial shear: u_r = z r (1 - r), u_theta = 0.2 z r (1 - r)
    for (int i = 0; i < f.nr; ++i)
        for (int j = 0; j < f.nz; ++j) {
            const double g = f.r(i) * (1 - f.r(i));
            f.u_r[f.idx(i, j)] = f.z(j) * g;
            f.u_theta[f.idx(i, j)] = 0.2 * f.z(j) * g;
        }
    SampleOptions strict;
    strict.strict_regime = true;
    CHECK_THROWS_AS(sample_diagnostics(f, 0.5, strict), RegimeError);
}

TEST_CASE("F_thm invariants") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n01;
    for (int k = 0; k < 200; ++k) {
        DiagnosticSample s;
        s.alpha3 = n01(rng);
        s.beta3 = n01(rng);
        s.beta4 = n01(rng);
        s.beta5 = n01(rng);
        s.fill_derived();
        CHECK(s.F_thm >= 0);
        CHECK(s.F_thm >= std::abs(s.F_proof) - std::abs(s.beta4) - 1e-14);
    }
}

TEST_CASE("ode_residual synthetic series") {
    auto max_res = [](int n, double k, bool linear) {
        std::vector<DiagnosticSample> ser;
        for (int i = 0; i <= n; ++i) {
            const double t = 0.5 * i / n;
            ser.push_back(linear ? ode_sample(t, 0.0, t, 1.0) : ode_sample(t, k, std::exp(k * k * t), 0.0));
        }
        return ode_residual(ser);
    };
    const auto a = max_res(20, 1.3, false), b = max_res(40, 1.3, false);
    CHECK(a.max_abs > 0);
    CHECK(a.max_abs / b.max_abs == doctest::Approx(4.0).epsilon(0.02));
    CHECK(a.residual.front() == std::nullopt);
    CHECK(a.residual.back() == std::nullopt);
    CHECK(max_res(20, 0.0, true).max_abs < 1e-12);

    std::vector<DiagnosticSample> corr;
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.5 * i / 200;
        corr.push_back(ode_sample(t, 1.3, std::exp(-1.69 * t), 0.0));
    }
    CHECK(ode_residual(corr, OdeForm::Corrected).relative < 1e-4);
    CHECK(ode_residual(corr, OdeForm::Printed).relative > 0.5);
}

TEST_CASE("ode_residual jump handling") {
    std::vector<DiagnosticSample> ser;
    for (int i = 0; i <= 10; ++i)
        ser.push_back(ode_sample(0.1 * i, 1.0, std::exp(0.1 * i), 0.0));
    ser[5].jump_flag = true;
    const auto r = ode_residual(ser);
    CHECK(r.residual[4] == std::nullopt);
    CHECK(r.residual[5] == std::nullopt);
    CHECK(r.residual[3].has_value());
    CHECK(r.residual[6].has_value());
    CHECK(r.excluded == std::vector<std::size_t>{4, 5});

    std::vector<DiagnosticSample> two(ser.begin(), ser.begin() + 2);
    CHECK_THROWS_AS(ode_residual(two), InsufficientDataError);
    for (std::size_t i = 1; i < ser.size(); i += 2)
        ser[i].jump_flag = true;
    CHECK_THROWS_AS(ode_residual(ser), InsufficientDataError);
}

TEST_CASE("integrating factor solution") {
    std::vector<double> t(101), k(101, 1.7), F(101, 0.0), c(101, 0.0), Fc(101, 0.3);
    for (int i = 0; i <= 100; ++i)
        t[i] = 0.01 * i;
    auto a = integrating_factor_solution(t, k, F, 2.0);
    auto b = integrating_factor_solution(t, c, Fc, 2.0);
    for (int i = 0; i <= 100; ++i) {
        CHECK(a[i] == doctest::Approx(2.0 * std::exp(1.7 * 1.7 * t[i])).epsilon(1e-13));
        CHECK(b[i] == doctest::Approx(2.0 + 0.3 * t[i]).epsilon(1e-13));
    }
    CHECK_THROWS_AS(integrating_factor_solution(t, std::vector<double>(3), F, 1.0), DomainError);
}

TEST_CASE("integrating factor matches RK4 on random inputs") {
    std::mt19937_64 rng(2024);
    const int n = 10000;
    for (int trial = 0; trial < 10; ++trial) {
        const auto in = random_growth_inputs(rng);
        std::vector<double> t(n + 1), k(n + 1), F(n + 1);
        for (int i = 0; i <= n; ++i) {
            t[i] = 1e-4 * i;
            k[i] = in.kappa(t[i]);
            F[i] = in.F(t[i]);
        }
        const auto a = integrating_factor_solution(t, k, F, 0.7);
        const auto b = rk4_growth(in, 0.7, 0.0, 1.0, n);
        double err = 0, scale = 0;
        for (int i = 0; i <= n; ++i) {
            err = std::max(err, std::abs(a[i] - b[i]));
            scale = std::max(scale, std::abs(b[i]));
        }
        CHECK(err / scale < 1e-8);
    }
}

TEST_CASE("theorem_check closed forms") {
    const double M = 2.0, N = 0.5, T = 0.8;
    std::vector<DiagnosticSample> ser;
    for (int i = 0; i <= 400; ++i) {
        const double t = T * i / 400;
        auto s = ode_sample(t, M, 2 * T * N * std::exp(M * M * t), 0.0);
        s.xi_r = 1.0 / M;
        ser.push_back(s);
    }
    auto tc = theorem_check(ser, N, T);
    CHECK(tc.premise);
    CHECK(tc.branch_G);
    CHECK_FALSE(tc.branch_F);
    CHECK(tc.M == doctest::Approx(M));
    CHECK(tc.branch_G_margin == doctest::Approx(std::exp(M * M * T) * T * N).epsilon(1e-12));
    CHECK(tc.intermediate_holds);
    CHECK(tc.F_bound_holds);
    CHECK(tc.conclusion_holds());

    for (auto& s : ser) {
        s.alpha3 = 2 * N;
        s.fill_derived();
        s.G = s.alpha1 = 1e-3;
    }
    tc = theorem_check(ser, N, T);
    CHECK(tc.branch_F);
    CHECK_FALSE(tc.premise);
    CHECK(tc.conclusion_holds());

    CHECK_THROWS_AS(theorem_check({}, N, T), InsufficientDataError);
}

TEST_CASE("theorem_check reports branch_G on exact synthetic series") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const double N = 0.1 + std::uniform_real_distribution<double>(0, 2)(rng);
        const auto ser = synthetic_theorem_series(rng, N, 1.0, 400);
        const auto tc = theorem_check(ser, N, 1.0);
        CHECK(tc.premise);
        CHECK_FALSE(tc.branch_F);
        CHECK(tc.branch_G);
        CHECK(tc.intermediate_holds);
    }
}

TEST_CASE("diagnostics CSV round trip") {
    std::vector<DiagnosticSample> ser;
    for (int i = 0; i < 5; ++i)
        ser.push_back(ode_sample(0.1 * i + 1.0 / 3, 1.1, std::exp(0.1 * i) / 7, 0.3));
    ser[4].valid = false;
    const auto res = ode_residual(std::vector<DiagnosticSample>(ser.begin(), ser.begin() + 4));
    ser[2].jump_flag = true;
    std::ostringstream os;
    write_diagnostics_csv(os, ser, res, {"note"});
    const std::string text = os.str();
    CHECK(text.rfind(std::string(kDiagnosticsHeader) + "\n", 0) == 0);
    CHECK(text.find("# note\n") != std::string::npos);
    CHECK(text.find("0.33333333333333331") != std::string::npos);

    std::istringstream is(text);
    const auto back = read_diagnostics_csv(is);
    REQUIRE(back.size() == ser.size());
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(back[i].t == ser[i].t);
        CHECK(back[i].alpha1 == ser[i].alpha1);
        CHECK(back[i].F_proof == ser[i].F_proof);
        CHECK(back[i].jump_flag == ser[i].jump_flag);
    }
    CHECK_FALSE(back[4].valid);
}
