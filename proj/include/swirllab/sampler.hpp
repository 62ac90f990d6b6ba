#pragma once

#include <swirllab/field.hpp>
#include <swirllab/frame.hpp>
#include <swirllab/spline.hpp>
#include <swirllab/vec.hpp>

#include <array>
#include <vector>

namespace swirl {

// Velocity in Cartesian components at a Cartesian point.
class CartesianField {
public:
    virtual ~CartesianField() = default;
    virtual Vec3 velocity(const Vec3& x) const = 0;
    // True when the field may be evaluated at z < 0 (analytic fields).
    virtual bool extends_below_wall() const { return true; }
};

// Frame components (u_z, u_rbar, u_thetabar) on the co-basis (dz, drbar, f dthetabar).
class FrameField {
public:
    virtual ~FrameField() = default;
    virtual Vec3 components(double z, double rbar, double tb) const = 0;
    virtual bool extends_below_wall() const = 0;
};

// Solver snapshot sampled with per-row cubic splines in r and cubic Lagrange in z.
class AxisymSampler : public CartesianField {
public:
    explicit AxisymSampler(const AxisymField& f);
    Vec3 velocity(const Vec3& x) const override;
    bool extends_below_wall() const override { return false; }
    // Cylindrical components (u_r, u_theta, u_z) at (r, z).
    Vec3 cylindrical(double r, double z) const;

private:
    int nr_, nz_;
    double dr_, dz_;
    std::vector<CubicSpline> ur_, ut_, uz_;
};

// Projects a Cartesian field onto the orthonormal frame (e_z, N, T) of a chart.
class FrameView : public FrameField {
public:
    FrameView(const CartesianField& u, const CurvilinearFrame& frame) : u_(u), frame_(frame) {}
    Vec3 components(double z, double rbar, double tb) const override;
    bool extends_below_wall() const override { return u_.extends_below_wall(); }
    const CurvilinearFrame& frame() const { return frame_; }

private:
    const CartesianField& u_;
    const CurvilinearFrame& frame_;
};

} // namespace swirl
