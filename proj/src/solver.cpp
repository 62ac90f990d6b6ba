#include <swirllab/errors.hpp>
#include <swirllab/solver.hpp>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace swirl {

RingProfile initial_profile(const RingParams& ic, double r, double z) {
    const double a2 = ic.a * ic.a;
    const double dr = r - ic.r0, dz = z - ic.z0;
    const double e = std::exp(-(dr * dr + dz * dz) / a2);
    // psi = c r^2 e, giving peak azimuthal vorticity gamma0/(pi a^2) at the core.
    const double c = ic.gamma0 / (4.0 * std::numbers::pi * ic.r0);
    const double psi_z = c * r * r * e * (-2.0 * dz / a2);
    const double psi_r_over_r = c * e * (2.0 + r * (-2.0 * dr / a2));
    RingProfile p;
    p.u_r = r > 0 ? -psi_z / r : 0.0;
    p.u_z = psi_r_over_r;
    p.u_theta = ic.w0 * e;
    return p;
}

void apply_boundary_conditions(AxisymField& f) {
    for (int i = 0; i < f.nr; ++i) {
        auto k = f.idx(i, 0);
        f.u_r[k] = f.u_theta[k] = f.u_z[k] = 0;
        f.u_z[f.idx(i, f.nz - 1)] = 0;
    }
    for (int j = 0; j < f.nz; ++j) {
        auto k = f.idx(0, j);
        f.u_r[k] = f.u_theta[k] = 0;
        f.u_r[f.idx(f.nr - 1, j)] = 0;
    }
}

// Discrete constraint on cells; unknowns are the free u_r and u_z nodes.
class Projector {
public:
    Projector(int nr, int nz, double dr, double dz) : nr_(nr), nz_(nz), dr_(dr), dz_(dz) {
        // free-dof numbering
        ur_id_.assign(static_cast<std::size_t>(nr) * nz, -1);
        uz_id_.assign(static_cast<std::size_t>(nr) * nz, -1);
        int n = 0;
        for (int i = 1; i <= nr - 2; ++i)
            for (int j = 1; j <= nz - 1; ++j) {
                ur_id_[i * nz + j] = n++;
                double w = i * dr * dr * dz;
                winv_.push_back(1.0 / (j == nz - 1 ? 0.5 * w : w));
            }
        for (int i = 0; i <= nr - 1; ++i)
            for (int j = 1; j <= nz - 2; ++j) {
                uz_id_[i * nz + j] = n++;
                double w;
                if (i == 0)
                    w = 0.5 * dr * dr * dz * 0.5;
                else if (i == nr - 1)
                    w = (nr - 1.5) * dr * dr * dz * 0.5;
                else
                    w = i * dr * dr * dz;
                winv_.push_back(1.0 / w);
            }
        nfree_ = n;
        ncell_ = (nr - 1) * (nz - 1);

        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(ncell_) * 8);
        for (int i = 0; i + 1 < nr; ++i) {
            double rc = (i + 0.5) * dr;
            double s = 1.0 / (rc * dr * dz);
            for (int j = 0; j + 1 < nz; ++j) {
                int c = i * (nz - 1) + j;
                auto add_r = [&](int ii, int jj, double coef) {
                    int id = ur_id_[ii * nz + jj];
                    if (id >= 0)
                        trip.emplace_back(c, id, coef * s);
                };
                auto add_z = [&](int ii, int jj, double coef) {
                    int id = uz_id_[ii * nz + jj];
                    if (id >= 0)
                        trip.emplace_back(c, id, coef * s);
                };
                double cr1 = 0.5 * dz * (i + 1) * dr, cr0 = -0.5 * dz * i * dr;
                add_r(i + 1, j, cr1);
                add_r(i + 1, j + 1, cr1);
                add_r(i, j, cr0);
                add_r(i, j + 1, cr0);
                double cz = 0.5 * rc * dr;
                add_z(i, j + 1, cz);
                add_z(i + 1, j + 1, cz);
                add_z(i, j, -cz);
                add_z(i + 1, j, -cz);
            }
        }
        C_.resize(ncell_, nfree_);
        C_.setFromTriplets(trip.begin(), trip.end());
        Eigen::VectorXd wv = Eigen::Map<Eigen::VectorXd>(winv_.data(), nfree_);
        Eigen::SparseMatrix<double> CW = C_ * wv.asDiagonal();
        Eigen::SparseMatrix<double> A = CW * C_.transpose();
        // Cell 0 is pinned: the rows of C sum to zero, so one constraint is redundant.
        Eigen::SparseMatrix<double> Ar = A.bottomRightCorner(ncell_ - 1, ncell_ - 1);
        ldlt_.compute(Ar);
        if (ldlt_.info() != Eigen::Success)
            throw Error("projection matrix factorization failed");
    }

    void apply(AxisymField& f, double dt, double tol) const {
        Eigen::VectorXd u(nfree_);
        gather(f, u);
        Eigen::VectorXd mu_total = Eigen::VectorXd::Zero(ncell_);
        for (int it = 0; it < 6; ++it) {
            Eigen::VectorXd res = C_ * u;
            if (res.lpNorm<Eigen::Infinity>() <= 0.1 * tol && it > 0)
                break;
            Eigen::VectorXd mu = Eigen::VectorXd::Zero(ncell_);
            mu.tail(ncell_ - 1) = ldlt_.solve(res.tail(ncell_ - 1));
            Eigen::VectorXd corr = C_.transpose() * mu;
            for (int k = 0; k < nfree_; ++k)
                u[k] -= winv_[k] * corr[k];
            mu_total += mu;
        }
        scatter(u, f);
        // nodal pressure: average of adjacent cells; mu is scaled by 1/(rc dr dz)
        std::fill(f.p.begin(), f.p.end(), 0.0);
        std::vector<int> cnt(f.size(), 0);
        for (int i = 0; i + 1 < nr_; ++i)
            for (int j = 0; j + 1 < nz_; ++j) {
                double rc = (i + 0.5) * dr_;
                double pc = -mu_total[i * (nz_ - 1) + j] / (rc * dr_ * dz_) / dt;
                for (int di = 0; di < 2; ++di)
                    for (int dj = 0; dj < 2; ++dj) {
                        auto k = f.idx(i + di, j + dj);
                        f.p[k] += pc;
                        ++cnt[k];
                    }
            }
        for (std::size_t k = 0; k < f.p.size(); ++k)
            f.p[k] /= cnt[k];
    }

private:
    void gather(const AxisymField& f, Eigen::VectorXd& u) const {
        for (std::size_t k = 0; k < ur_id_.size(); ++k) {
            if (ur_id_[k] >= 0)
                u[ur_id_[k]] = f.u_r[k];
            if (uz_id_[k] >= 0)
                u[uz_id_[k]] = f.u_z[k];
        }
    }
    void scatter(const Eigen::VectorXd& u, AxisymField& f) const {
        for (std::size_t k = 0; k < ur_id_.size(); ++k) {
            if (ur_id_[k] >= 0)
                f.u_r[k] = u[ur_id_[k]];
            if (uz_id_[k] >= 0)
                f.u_z[k] = u[uz_id_[k]];
        }
    }

    int nr_, nz_;
    double dr_, dz_;
    int nfree_ = 0, ncell_ = 0;
    std::vector<int> ur_id_, uz_id_;
    std::vector<double> winv_;
    Eigen::SparseMatrix<double> C_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

namespace {

double stable_dt(const AxisymField& f, double cfl, double nu) {
    double umax = 0;
    for (std::size_t k = 0; k < f.size(); ++k)
        umax = std::max(umax, std::sqrt(f.u_r[k] * f.u_r[k] + f.u_theta[k] * f.u_theta[k] + f.u_z[k] * f.u_z[k]));
    const double h = std::min(f.dr, f.dz);
    double lim = h * h / (4.0 * nu);
    if (umax > 0)
        lim = std::min(lim, h / umax);
    return cfl * lim;
}

} // namespace

Solver::Solver(const SimConfig& cfg) : cfg_(cfg) {
    validate(cfg_);
    proj_ = std::make_unique<Projector>(cfg_.nr, cfg_.nz, cfg_.dr(), cfg_.dz());
}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

AxisymField Solver::blank() const { return AxisymField(cfg_.nr, cfg_.nz, cfg_.dr(), cfg_.dz(), cfg_.nu); }

AxisymField Solver::init_field() const {
    AxisymField f = blank();
    for (int i = 0; i < f.nr; ++i)
        for (int j = 0; j < f.nz; ++j) {
            auto p = initial_profile(cfg_.ic, f.r(i), f.z(j));
            auto k = f.idx(i, j);
            f.u_r[k] = p.u_r;
            f.u_theta[k] = p.u_theta;
            f.u_z[k] = p.u_z;
        }
    project(f);
    std::fill(f.p.begin(), f.p.end(), 0.0);
    return f;
}

void Solver::project(AxisymField& f, double dt) const {
    apply_boundary_conditions(f);
    proj_->apply(f, dt, cfg_.proj_tol);
}

double Solver::cfl_dt(const AxisymField& f) const { return stable_dt(f, cfg_.cfl, cfg_.nu); }

void Solver::rhs(const AxisymField& f, double t, std::vector<double>& Rr, std::vector<double>& Rt,
                 std::vector<double>& Rz) const {
    const int nr = f.nr, nz = f.nz;
    const double dr = f.dr, dz = f.dz, nu = cfg_.nu;
    Rr.assign(f.size(), 0.0);
    Rt.assign(f.size(), 0.0);
    Rz.assign(f.size(), 0.0);
    const double i2dr = 0.5 / dr, i2dz = 0.5 / dz, idr2 = 1.0 / (dr * dr), idz2 = 1.0 / (dz * dz);

    // Mirror ghosts for the stress-free outer and top boundaries.
    auto ip = [&](int i) { return i + 1 < nr ? i + 1 : nr - 2; };
    auto jp = [&](int j) { return j + 1 < nz ? j + 1 : nz - 2; };

    const auto& ur = f.u_r;
    const auto& ut = f.u_theta;
    const auto& uz = f.u_z;
    for (int i = 0; i < nr; ++i) {
        const double r = f.r(i);
        for (int j = 1; j < nz; ++j) {
            const auto k = f.idx(i, j);
            if (i == 0) {
                if (j <= nz - 2) {
                    const auto kn = f.idx(0, j + 1), ks = f.idx(0, j - 1), ke = f.idx(1, j);
                    double lap = 4.0 * (uz[ke] - uz[k]) * idr2 + (uz[kn] - 2 * uz[k] + uz[ks]) * idz2;
                    Rz[k] = -uz[k] * (uz[kn] - uz[ks]) * i2dz + nu * lap;
                }
                continue;
            }
            const auto ke = f.idx(ip(i), j), kw = f.idx(i - 1, j);
            const auto kn = f.idx(i, jp(j)), ks = f.idx(i, j - 1);
            const double a = ur[k], b = uz[k];
            auto adv_lap = [&](const std::vector<double>& q, double& adv, double& lap) {
                double qr = (q[ke] - q[kw]) * i2dr;
                double qz = (q[kn] - q[ks]) * i2dz;
                adv = a * qr + b * qz;
                lap = (q[ke] - 2 * q[k] + q[kw]) * idr2 + qr / r + (q[kn] - 2 * q[k] + q[ks]) * idz2;
            };
            double adv, lap;
            if (i <= nr - 2) {
                adv_lap(ur, adv, lap);
                Rr[k] = -adv + ut[k] * ut[k] / r + nu * (lap - a / (r * r));
            }
            adv_lap(ut, adv, lap);
            Rt[k] = -adv - a * ut[k] / r + nu * (lap - ut[k] / (r * r));
            if (j <= nz - 2) {
                adv_lap(uz, adv, lap);
                Rz[k] = -adv + nu * lap;
            }
        }
    }
    if (forcing_) {
        std::vector<double> fr(f.size()), ft(f.size()), fz(f.size());
        forcing_(t, fr, ft, fz);
        for (int i = 0; i < nr; ++i)
            for (int j = 1; j < nz; ++j) {
                auto k = f.idx(i, j);
                if (i >= 1 && i <= nr - 2)
                    Rr[k] += fr[k];
                if (i >= 1)
                    Rt[k] += ft[k];
                if (j <= nz - 2)
                    Rz[k] += fz[k];
            }
    }
}

AxisymField Solver::step(const AxisymField& f, double dt) const {
    if (!(dt > 0))
        throw ConfigError("time step must be positive");
    std::vector<double> Rr, Rt, Rz;
    auto euler = [&](const AxisymField& in, double t) {
        rhs(in, t, Rr, Rt, Rz);
        AxisymField out = in;
        for (std::size_t k = 0; k < in.size(); ++k) {
            out.u_r[k] += dt * Rr[k];
            out.u_theta[k] += dt * Rt[k];
            out.u_z[k] += dt * Rz[k];
        }
        out.t = t + dt;
        project(out, dt);
        return out;
    };
    AxisymField u1 = euler(f, f.t);
    AxisymField u2 = euler(u1, f.t + dt);
    AxisymField out = u2;
    for (std::size_t k = 0; k < f.size(); ++k) {
        out.u_r[k] = 0.5 * (f.u_r[k] + u2.u_r[k]);
        out.u_theta[k] = 0.5 * (f.u_theta[k] + u2.u_theta[k]);
        out.u_z[k] = 0.5 * (f.u_z[k] + u2.u_z[k]);
    }
    out.t = f.t + dt;
    if (!all_finite(out))
        throw NumericalBlowUp("non-finite value after step", out.t);
    return out;
}

namespace {

const Solver& cached_solver(const SimConfig& cfg) {
    static std::mutex m;
    static std::map<std::tuple<int, int, double, double, double, double>, std::unique_ptr<Solver>> cache;
    std::lock_guard lock(m);
    auto key = std::make_tuple(cfg.nr, cfg.nz, cfg.r_max, cfg.z_max, cfg.nu, cfg.proj_tol);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<Solver>(cfg)).first;
    return *it->second;
}

} // namespace

AxisymField init_field(const SimConfig& cfg) {
    validate(cfg);
    Solver s(cfg);
    return s.init_field();
}

AxisymField step(const AxisymField& field, const SimConfig& cfg) {
    validate(cfg);
    const Solver& s = cached_solver(cfg);
    return s.step(field, s.cfl_dt(field));
}

double cfl_dt(const AxisymField& field, const SimConfig& cfg) {
    validate(cfg);
    return stable_dt(field, cfg.cfl, cfg.nu);
}

} // namespace swirl
