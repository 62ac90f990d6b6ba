#include <swirllab/errors.hpp>
#include <swirllab/frame.hpp>
#include <swirllab/geometry.hpp>
#include <swirllab/manufactured.hpp>
#include <swirllab/oracle.hpp>
#include <swirllab/parallel.hpp>
#include <swirllab/verify.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

namespace swirl {

bool VerificationReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckResult& r) { return r.pass; });
}

namespace {

const FieldKind kKinds[] = {FieldKind::Zero, FieldKind::PureSwirl, FieldKind::PolyNoSlip, FieldKind::TrigDivFree,
                            FieldKind::ForcedNS};
const double kSwirlRates[] = {1.0, 0.99, 0.97};

std::mt19937_64 row_rng(std::uint64_t seed, std::uint64_t row) {
    std::seed_seq s{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(row)};
    return std::mt19937_64(s);
}

struct Point {
    double z, rbar, tb;
};

std::vector<Point> chart_points(const CurvilinearFrame& fr, std::mt19937_64& rng, int n, bool wall) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) {
        const double z = wall ? 0.0 : 0.3 * std::abs(U(rng));
        pts.push_back({z, 0.5 * U(rng) * fr.rbar_limit(), 0.5 * U(rng) * fr.delta});
    }
    return pts;
}

std::vector<CurvilinearFrame> random_frames(std::uint64_t seed) {
    std::vector<CurvilinearFrame> out;
    auto rng = row_rng(seed, 9999);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (double s : kSwirlRates) {
        const double y = 0.2 + 0.3 * U(rng), a = U(rng), b = U(rng) - 0.5;
        auto shear = synthetic_shear(s, [=](double r) { return 1.0 + a * r + b * r * r; }, 1.0, 201);
        out.push_back(integrate_curve(ShearField(shear), y));
    }
    return out;
}

// Running max of |a - b| and of |b| so the error is relative to the quantity's scale.
struct RelErr {
    double err = 0, scale = 0;
    void add(double a, double b) {
        err = std::max(err, std::abs(a - b));
        scale = std::max(scale, std::abs(b));
    }
    void add(const Vec3& a, const Vec3& b) {
        for (int c = 0; c < 3; ++c)
            add(a[c], b[c]);
    }
    double value() const { return scale > 0 ? err / scale : err; }
};

CheckResult finish(const CheckSpec& spec, double worst, std::string detail = {}) {
    CheckResult r{spec.check, spec.field, worst, spec.tolerance, std::isfinite(worst) && worst <= spec.tolerance,
                  std::move(detail)};
    return r;
}

CheckResult run_field_check(const CheckSpec& spec, FieldKind kind, const std::vector<CurvilinearFrame>& frames,
                            const VerifyOptions& opt, std::uint64_t row) {
    auto rng = row_rng(opt.seed, row);
    const ManufacturedField u = ManufacturedField::random(kind, rng);
    RelErr e;
    double abs_worst = 0;
    for (const auto& fr : frames) {
        FrameView view(u, fr);
        if (spec.check == "divergence") {
            for (const auto& p : chart_points(fr, rng, opt.points, false)) {
                const double a = divergence_frame(view, fr, p.z, p.rbar, p.tb);
                const double b = frame_transform_oracle(u, fr, OracleQuantity::Divergence, p.z, p.rbar, p.tb)[0];
                abs_worst = std::max(abs_worst, std::abs(a - b));
            }
        } else if (spec.check == "laplacian") {
            for (const auto& p : chart_points(fr, rng, opt.points, false))
                e.add(laplacian_frame(view, fr, p.z, p.rbar, p.tb, {}, 1e-6),
                      frame_transform_oracle(u, fr, OracleQuantity::Laplacian, p.z, p.rbar, p.tb));
        } else if (spec.check == "advection") {
            for (const auto& p : chart_points(fr, rng, opt.points, false))
                e.add(covariant_derivative_frame(view, fr, p.z, p.rbar, p.tb),
                      frame_transform_oracle(u, fr, OracleQuantity::Advection, p.z, p.rbar, p.tb));
        } else if (spec.check == "boundary-identities") {
            const auto a = boundary_identities(view, fr);
            const auto b = boundary_identities_oracle(u, fr);
            e.add(Vec3{a.dz_e2, a.dz_e3, a.dr_e1}, Vec3{b.dz_e2, b.dz_e3, b.dr_e1});
            e.add(a.dt_e1, b.dt_e1);
        } else if (spec.check == "pressure-mixed") {
            ChartScalar p = [&](double z, double r, double t) { return u.pressure(fr.chart(z, r, t)); };
            std::uniform_real_distribution<double> U(-1.0, 1.0);
            for (int k = 0; k < opt.points; ++k) {
                const double z = 0.3 * std::abs(U(rng)), tb = 0.5 * U(rng) * fr.delta;
                const auto a = pressure_mixed_partials(p, fr, z, tb);
                const auto b = pressure_mixed_oracle(u, fr, z, tb);
                e.add(a[0], b[0]);
                e.add(a[1], b[1]);
            }
        } else if (spec.check == "wall-momentum") {
            // At the wall u = 0, so grad p - lap u equals the body force (nu = 1, t = 0).
            ChartScalar p = [&](double z, double r, double t) { return u.pressure(fr.chart(z, r, t)); };
            for (const auto& q : chart_points(fr, rng, opt.points, true)) {
                const FdSteps h;
                const double f = fr.f(q.rbar, q.tb);
                const Vec3 gp{chart_partial(p, 0.0, q.rbar, q.tb, 1, 0, 0, h, true),
                              chart_partial(p, 0.0, q.rbar, q.tb, 0, 1, 0, h, true),
                              chart_partial(p, 0.0, q.rbar, q.tb, 0, 0, 1, h, true) / f};
                const Vec3 lap = laplacian_frame(view, fr, 0.0, q.rbar, q.tb, h, 1e-6);
                const Vec3 force = u.forcing(fr.chart(0.0, q.rbar, q.tb), 0.0, 1.0);
                const Vec2 N = fr.normal_at(q.tb), T = fr.tangent_at(q.tb);
                const Vec3 fp{force[2], force[0] * N[0] + force[1] * N[1], force[0] * T[0] + force[1] * T[1]};
                e.add(Vec3{gp[0] - lap[0], gp[1] - lap[1], gp[2] - lap[2]}, fp);
            }
        } else {
            throw DomainError("unknown check " + spec.check);
        }
    }
    return finish(spec, spec.check == "divergence" ? abs_worst : e.value());
}

CheckResult run_frame_check(const CheckSpec& spec, const std::vector<CurvilinearFrame>& frames,
                            const VerifyOptions& opt, std::uint64_t row) {
    auto rng = row_rng(opt.seed, row);
    double worst = 0;
    if (spec.check == "christoffel") {
        for (const auto& fr : frames)
            for (const auto& p : chart_points(fr, rng, opt.points, true)) {
                const auto a = christoffel(fr, p.rbar, p.tb, GeometryMutation{opt.mutate});
                const auto b = christoffel_oracle(fr, p.rbar, p.tb);
                for (int k = 0; k < 3; ++k)
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j)
                            worst = std::max(worst, std::abs(a(k, i, j) - b(k, i, j)));
            }
        return finish(spec, worst);
    }
    if (spec.check == "hodge") {
        std::normal_distribution<double> n01;
        RelErr e;
        for (const auto& fr : frames)
            for (const auto& p : chart_points(fr, rng, opt.points, true)) {
                const Vec3 w{n01(rng), n01(rng), n01(rng)};
                e.add(hodge_star_2form(w, fr, p.rbar, p.tb), hodge_2form_oracle(w, fr, p.rbar, p.tb));
                e.add(hodge_star_1form(w, fr.f(p.rbar, p.tb)), hodge_1form_oracle(w, fr, p.rbar, p.tb));
            }
        return finish(spec, e.value());
    }
    if (spec.check == "circle-curvature") {
        for (double R : {0.05, 0.1, 0.5}) {
            auto shear = synthetic_shear(1.0, [](double r) { return 1.0 + r; }, 1.0, 401);
            const auto fr = integrate_curve(ShearField(shear), R);
            for (int k = -20; k <= 20; ++k) {
                const double tb = fr.delta * k / 20.0;
                worst = std::max({worst, std::abs(fr.kappa_at(tb) - 1.0 / R), std::abs(fr.dkappa_at(tb))});
            }
        }
        return finish(spec, worst);
    }
    throw DomainError("unknown check " + spec.check);
}

} // namespace

std::vector<CheckSpec> verification_matrix() {
    std::vector<CheckSpec> m;
    for (auto kind : kKinds) {
        const std::string f = to_string(kind);
        m.push_back({"divergence", f, 1e-6});
        m.push_back({"laplacian", f, 1e-5});
        m.push_back({"advection", f, 1e-5});
        m.push_back({"boundary-identities", f, 1e-5});
        if (kind == FieldKind::Zero || kind == FieldKind::ForcedNS) {
            m.push_back({"pressure-mixed", f, 1e-6});
            m.push_back({"wall-momentum", f, 1e-5});
        }
    }
    m.push_back({"christoffel", "frame", 1e-7});
    m.push_back({"hodge", "frame", 1e-10});
    m.push_back({"circle-curvature", "frame", 1e-6});
    return m;
}

VerificationReport run_verification_suite(const VerifyOptions& opt) {
    const auto matrix = verification_matrix();
    const auto frames = random_frames(opt.seed);
    VerificationReport rep;
    rep.rows.resize(matrix.size());
    parallel_for(matrix.size(), [&](std::size_t i) {
        const auto& spec = matrix[i];
        try {
            rep.rows[i] = spec.field == "frame" ? run_frame_check(spec, frames, opt, i)
                                                : run_field_check(spec, field_kind_from_string(spec.field), frames,
                                                                  opt, i);
        } catch (const std::exception& ex) {
            rep.rows[i] = CheckResult{spec.check, spec.field, std::nan(""), spec.tolerance, false, ex.what()};
        }
    });
    return rep;
}

void write_report_text(std::ostream& os, const VerificationReport& r) {
    std::size_t passed = 0;
    for (const auto& row : r.rows) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-4s %-20s %-13s worst=%.3e tol=%.1e", row.pass ? "PASS" : "FAIL",
                      row.check.c_str(), row.field.c_str(), row.worst_error, row.tolerance);
        os << buf;
        if (!row.detail.empty())
            os << "  (" << row.detail << ')';
        os << '\n';
        passed += row.pass ? 1 : 0;
    }
    os << passed << '/' << r.rows.size() << " checks passed\n";
}

void write_report_csv(std::ostream& os, const VerificationReport& r) {
    os << "check,field,worst_error,tolerance,pass\n";
    for (const auto& row : r.rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", row.worst_error, row.tolerance);
        os << row.check << ',' << row.field << ',' << buf << ',' << (row.pass ? 1 : 0) << '\n';
    }
}

} // namespace swirl
