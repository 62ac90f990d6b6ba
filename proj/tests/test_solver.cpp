#include <doctest.h>

#include <swirllab/errors.hpp>
#include <swirllab/mms.hpp>
#include <swirllab/solver.hpp>

#include <algorithm>
#include <cmath>

using namespace swirl;

namespace {

SimConfig small_config(int n = 32) {
    SimConfig c;
    c.nr = c.nz = n;
    c.t_end = 0.01;
    return c;
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("config invariants") {
    SimConfig c = small_config();
    CHECK_NOTHROW(validate(c));
    c.nu = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_config();
    c.nr = 8;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_config();
    c.ic.z0 = 0.1;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_config();
    c.cfl = 1.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("toml config round trip") {
    auto rc = parse_config("nr = 40\nnz = 48\nnu = 0.5\n[ic]\nr0 = 0.4\n[diagnostics]\nN = 2.5\n");
    CHECK(rc.sim.nr == 40);
    CHECK(rc.sim.nz == 48);
    CHECK(rc.sim.nu == 0.5);
    CHECK(rc.sim.ic.r0 == 0.4);
    CHECK(rc.diag.N == 2.5);
    CHECK_THROWS_AS(parse_config("nu = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("nr = \"x\"\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("nr = [\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("nx = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[diagnostics]\nnu = 0.5\n"), ConfigError);
}

TEST_CASE("initial profile at the core") {
    RingParams ic;
    ic.gamma0 = 0;
    ic.w0 = 1;
    auto p = initial_profile(ic, ic.r0, ic.z0);
    CHECK(p.u_theta == doctest::Approx(1.0));
    CHECK(p.u_r == 0.0);
    CHECK(p.u_z == 0.0);
}

TEST_CASE("zero amplitudes give the zero field, which is a fixed point") {
    SimConfig c = small_config();
    c.ic.gamma0 = 0;
    c.ic.w0 = 0;
    Solver s(c);
    auto f = s.init_field();
    CHECK(max_abs(f.u_r) == 0.0);
    CHECK(max_abs(f.u_theta) == 0.0);
    CHECK(max_abs(f.u_z) == 0.0);
    for (int n = 0; n < 5; ++n)
        f = s.step(f);
    CHECK(max_abs(f.u_r) == 0.0);
    CHECK(max_abs(f.u_theta) == 0.0);
    CHECK(max_abs(f.u_z) == 0.0);
    CHECK(f.t > 0);
}

TEST_CASE("cfl time step") {
    SimConfig c = small_config();
    c.nr = c.nz = 101;
    AxisymField f(101, 101, 0.01, 0.01, 1.0);
    CHECK(cfl_dt(f, c) == doctest::Approx(1.25e-5).epsilon(1e-12));
    c.nu = 1e-4;
    f.u_theta[f.idx(10, 10)] = 1.0;
    CHECK(cfl_dt(f, c) == doctest::Approx(0.5 * 0.01).epsilon(1e-12));
    // halving the spacing: quartered under the diffusive limit, halved under the advective one
    c.nu = 1.0;
    AxisymField g(201, 201, 0.005, 0.005, 1.0);
    CHECK(cfl_dt(g, c) == doctest::Approx(cfl_dt(AxisymField(101, 101, 0.01, 0.01), c) / 4));
    c.nu = 1e-4;
    g.u_theta[g.idx(10, 10)] = 1.0;
    AxisymField h(101, 101, 0.01, 0.01, 1.0);
    h.u_theta[h.idx(10, 10)] = 1.0;
    CHECK(cfl_dt(g, c) == doctest::Approx(cfl_dt(h, c) / 2));
}

TEST_CASE("initial field is projected and satisfies boundary invariants") {
    SimConfig c = small_config(48);
    Solver s(c);
    auto f = s.init_field();
    CHECK(max_divergence(f) <= c.proj_tol);
    for (int i = 0; i < f.nr; ++i) {
        auto k = f.idx(i, 0);
        CHECK(f.u_r[k] == 0.0);
        CHECK(f.u_theta[k] == 0.0);
        CHECK(f.u_z[k] == 0.0);
    }
    for (int j = 0; j < f.nz; ++j) {
        CHECK(f.u_r[f.idx(0, j)] == 0.0);
        CHECK(f.u_theta[f.idx(0, j)] == 0.0);
    }
}

TEST_CASE("steps keep invariants, are deterministic and dissipate energy") {
    SimConfig c = small_config(40);
    Solver s(c);
    auto f = s.init_field();
    const AxisymField f0 = f;
    double e_prev = kinetic_energy(f);
    for (int n = 0; n < 10; ++n) {
        auto g = s.step(f);
        CHECK(max_divergence(g) <= c.proj_tol);
        double e = kinetic_energy(g);
        CHECK(e <= e_prev * (1 + 1e-12));
        e_prev = e;
        f = g;
    }
    auto a = s.step(f0);
    auto b = s.step(f0);
    CHECK(a.u_r == b.u_r);
    CHECK(a.u_theta == b.u_theta);
    CHECK(a.u_z == b.u_z);
    CHECK(f0.t == 0.0);
}

TEST_CASE("non-positive time step is a configuration error") {
    Solver s(small_config());
    auto f = s.blank();
    CHECK_THROWS_AS(s.step(f, 0.0), ConfigError);
}

TEST_CASE("blow-up is reported with its time") {
    SimConfig c = small_config();
    Solver s(c);
    auto f = s.blank();
    f.u_theta[f.idx(5, 5)] = std::nan("");
    f.t = 0.25;
    try {
        s.step(f, 1e-5);
        FAIL("expected blow-up");
    } catch (const NumericalBlowUp& e) {
        CHECK(e.time == doctest::Approx(0.25 + 1e-5));
    }
}

TEST_CASE("snapshot round trip is bit exact") {
    Solver s(small_config());
    auto f = s.init_field();
    f.t = 0.125;
    write_snapshot(f, "snap_test.bin");
    auto g = read_snapshot("snap_test.bin");
    CHECK(g.nr == f.nr);
    CHECK(g.dz == f.dz);
    CHECK(g.t == f.t);
    CHECK(g.u_theta == f.u_theta);
    CHECK(g.p == f.p);
    std::remove("snap_test.bin");
    CHECK_THROWS_AS(read_snapshot("does_not_exist.bin"), IoError);
}

TEST_CASE("manufactured solution converges at second order") {
    std::vector<ConvergenceLevel> lv;
    for (int cells : {16, 32, 64})
        lv.push_back(mms_level(cells, 0.01));
    for (const auto& l : lv)
        CHECK(l.max_div <= 1e-8);
    const double o1 = std::log2(lv[0].error / lv[1].error), o2 = std::log2(lv[1].error / lv[2].error);
    MESSAGE("errors " << lv[0].error << " " << lv[1].error << " " << lv[2].error << " orders " << o1 << " " << o2);
    CHECK(o1 > 1.8);
    CHECK(o2 > 1.8);
}
