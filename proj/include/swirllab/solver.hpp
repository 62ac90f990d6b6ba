#pragma once

#include <swirllab/config.hpp>
#include <swirllab/field.hpp>

#include <functional>
#include <memory>
#include <vector>

namespace swirl {

// Body force sampled on the grid at time t; arrays sized nr*nz.
using Forcing = std::function<void(double t, std::vector<double>& fr, std::vector<double>& ftheta,
                                   std::vector<double>& fz)>;

// Pre-projection initial data: Gaussian ring (through a localized streamfunction)
// plus Gaussian swirl, evaluated pointwise.
struct RingProfile {
    double u_r, u_theta, u_z;
};
RingProfile initial_profile(const RingParams& ic, double r, double z);

class Projector;

// Explicit Heun integrator with an exact discrete projection after each stage.
class Solver {
public:
    explicit Solver(const SimConfig& cfg);
    ~Solver();
    Solver(Solver&&) noexcept;
    Solver& operator=(Solver&&) noexcept;

    const SimConfig& config() const { return cfg_; }
    void set_forcing(Forcing f) { forcing_ = std::move(f); }

    AxisymField blank() const;
    AxisymField init_field() const;
    // Clamps the boundary values and projects; p receives -mu/dt.
    void project(AxisymField& f, double dt = 1.0) const;
    double cfl_dt(const AxisymField& f) const;
    AxisymField step(const AxisymField& f, double dt) const;
    AxisymField step(const AxisymField& f) const { return step(f, cfl_dt(f)); }

    // Time derivative without pressure; evolving entries only, others zero.
    void rhs(const AxisymField& f, double t, std::vector<double>& rr, std::vector<double>& rt,
             std::vector<double>& rz) const;

private:
    SimConfig cfg_;
    std::unique_ptr<Projector> proj_;
    Forcing forcing_;
};

void apply_boundary_conditions(AxisymField& f);

// Stateless wrappers matching the per-operation contract; the factorized
// projector is cached per grid shape.
AxisymField init_field(const SimConfig& cfg);
AxisymField step(const AxisymField& field, const SimConfig& cfg);
double cfl_dt(const AxisymField& field, const SimConfig& cfg);

} // namespace swirl
