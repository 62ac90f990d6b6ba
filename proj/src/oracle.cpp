#include <swirllab/errors.hpp>
#include <swirllab/oracle.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace swirl {

namespace {

// Sixth-order central first derivative; independent of the frame-geometry stencils.
template <class F>
auto d6(F&& g, double h) {
    constexpr double w[] = {-1.0 / 60, 9.0 / 60, -45.0 / 60, 0.0, 45.0 / 60, -9.0 / 60, 1.0 / 60};
    auto acc = g(0.0);
    acc = 0.0 * acc;
    for (int k = 0; k < 7; ++k)
        if (w[k] != 0.0)
            acc = acc + (w[k] / h) * g((k - 3) * h);
    return acc;
}

double oracle_step(const CurvilinearFrame& frame) { return 4.0 * frame.spacing; }

// Columns: d/dz, d/drbar, d/dthetabar of the chart map.
std::array<Vec3, 3> jacobian(const CurvilinearFrame& frame, double z, double rbar, double tb) {
    const double h = oracle_step(frame);
    return {d6([&](double s) { return frame.chart(z + s, rbar, tb); }, h),
            d6([&](double s) { return frame.chart(z, rbar + s, tb); }, h),
            d6([&](double s) { return frame.chart(z, rbar, tb + s); }, h)};
}

} // namespace

Vec3 project_to_frame(const Vec3& w, const CurvilinearFrame& frame, double z, double rbar, double tb) {
    auto J = jacobian(frame, z, rbar, tb);
    return {dot(w, J[0]) / norm(J[0]), dot(w, J[1]) / norm(J[1]), dot(w, J[2]) / norm(J[2])};
}

Vec3 frame_transform_oracle(const ManufacturedField& u, const CurvilinearFrame& frame, OracleQuantity q,
                            double z, double rbar, double tb) {
    const Vec3 x = frame.chart(z, rbar, tb);
    auto jet = u.velocity_jet(x);
    auto d = [&](int c, int axis, int order) {
        int m[3] = {0, 0, 0};
        m[axis] = order;
        return jet[c].derivative(m[0], m[1], m[2]);
    };
    switch (q) {
    case OracleQuantity::Divergence: return {d(0, 0, 1) + d(1, 1, 1) + d(2, 2, 1), 0.0, 0.0};
    case OracleQuantity::Laplacian: {
        Vec3 lap;
        for (int c = 0; c < 3; ++c)
            lap[c] = d(c, 0, 2) + d(c, 1, 2) + d(c, 2, 2);
        return project_to_frame(lap, frame, z, rbar, tb);
    }
    case OracleQuantity::Advection: {
        Vec3 adv;
        for (int c = 0; c < 3; ++c)
            adv[c] = jet[0].value() * d(c, 0, 1) + jet[1].value() * d(c, 1, 1) + jet[2].value() * d(c, 2, 1);
        return project_to_frame(adv, frame, z, rbar, tb);
    }
    }
    throw DomainError("unknown oracle quantity");
}

ChristoffelTable christoffel_oracle(const CurvilinearFrame& frame, double rbar, double tb) {
    const double h = oracle_step(frame);
    using M3 = Eigen::Matrix3d;
    auto metric = [&](double r, double t) {
        auto J = jacobian(frame, 0.0, r, t);
        M3 g;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                g(i, j) = dot(J[i], J[j]);
        return g;
    };
    std::array<M3, 3> dg;
    dg[0].setZero(); // the chart is a translation in z
    dg[1] = d6([&](double s) { return M3(metric(rbar + s, tb)); }, h);
    dg[2] = d6([&](double s) { return M3(metric(rbar, tb + s)); }, h);
    const M3 ginv = metric(rbar, tb).inverse();
    ChristoffelTable out;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int l = 0; l < 3; ++l)
                    s += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                out.gamma[k][i][j] = s;
            }
    return out;
}

namespace {

Eigen::Matrix3d metric_at(const CurvilinearFrame& frame, double rbar, double tb) {
    auto J = jacobian(frame, 0.0, rbar, tb);
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g(i, j) = dot(J[i], J[j]);
    return g;
}

double levi(int i, int j, int k) { return 0.5 * (i - j) * (j - k) * (k - i); }

// (dz^drbar, drbar^dthetabar, dthetabar^dz) <-> antisymmetric index pairs.
constexpr int pair_i[] = {0, 1, 2};
constexpr int pair_j[] = {1, 2, 0};

} // namespace

Vec3 hodge_2form_oracle(const Vec3& w, const CurvilinearFrame& frame, double rbar, double tb) {
    const Eigen::Matrix3d g = metric_at(frame, rbar, tb);
    const Eigen::Matrix3d gi = g.inverse();
    const double vol = std::sqrt(g.determinant());
    double om[3][3] = {};
    for (int p = 0; p < 3; ++p) {
        om[pair_i[p]][pair_j[p]] = w[p];
        om[pair_j[p]][pair_i[p]] = -w[p];
    }
    Vec3 out{0, 0, 0};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        out[k] += 0.5 * vol * gi(i, a) * gi(j, b) * om[a][b] * levi(i, j, k);
    return out;
}

Vec3 hodge_1form_oracle(const Vec3& w, const CurvilinearFrame& frame, double rbar, double tb) {
    const Eigen::Matrix3d g = metric_at(frame, rbar, tb);
    const Eigen::Matrix3d gi = g.inverse();
    const double vol = std::sqrt(g.determinant());
    Vec3 out{0, 0, 0};
    for (int p = 0; p < 3; ++p)
        for (int k = 0; k < 3; ++k)
            for (int a = 0; a < 3; ++a)
                out[p] += vol * levi(pair_i[p], pair_j[p], k) * gi(k, a) * w[a];
    return out;
}

std::array<double, 2> pressure_mixed_oracle(const ManufacturedField& u, const CurvilinearFrame& frame, double z,
                                            double tb) {
    const Vec3 x = frame.chart(z, 0.0, tb);
    const auto jet = u.pressure_jet(x);
    const Vec3 hz{jet.derivative(1, 0, 1), jet.derivative(0, 1, 1), jet.derivative(0, 0, 2)};
    const auto J = jacobian(frame, z, 0.0, tb);
    const double m = dot(hz, J[2]);
    const double f = norm(J[2]);
    return {m / f, m};
}

BoundaryIdentities boundary_identities_oracle(const ManufacturedField& u, const CurvilinearFrame& frame) {
    const double h = oracle_step(frame);
    auto cc = [&](double z, double r, double t) {
        Vec3 l = frame_transform_oracle(u, frame, OracleQuantity::Laplacian, z, r, t);
        return Vec3{-l[0], -l[1], -l[2]};
    };
    const Vec3 dz = d6([&](double s) { return cc(s, 0.0, 0.0); }, h);
    const Vec3 dr = d6([&](double s) { return cc(0.0, s, 0.0); }, h);
    const Vec3 dt = d6([&](double s) { return cc(0.0, 0.0, s); }, h);
    return {dz[1], dz[2], dr[0], dt[0]};
}

} // namespace swirl
